"""Command line front end.

Every subcommand reads matrices from JSON or plain-text files, prints a
human-readable report by default and a stable JSON document with --json.
Exit codes: 0 when the computation succeeds or a verification passes, 1
when a comparison distinguishes its inputs or a verification fails, 2 on
malformed input.  Output is deterministic; the only randomness (sse
random) is seed-controlled, with SHIFTLAB_SEED as the default seed.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import block_codes, ck_invariants, fileio, shift_spaces, spectral
from .intlinalg import DimensionMismatch


def _emit(doc: dict, as_json: bool, lines) -> None:
    if as_json:
        click.echo(json.dumps(doc, indent=1, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def _input_errors(fn):
    """Report bad files or dimensions on stderr and exit 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (fileio.FileFormatError, DimensionMismatch) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _group_dict(G) -> dict:
    return {
        "label": G.label(),
        "invariant_factors": list(G.invariant_factors),
        "free_rank": G.free_rank,
    }


def _pair_dict(P) -> dict:
    doc = P.summary.as_dict()
    doc["label"] = P.label()
    return doc


def _verdict_dict(v) -> dict:
    return {"verdict": v.verdict.value, "certificate": v.certificate}


@click.group()
@click.version_option(package_name="shiftlab")
def main():
    """Conjugacy invariants of topological Markov shifts."""


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@_input_errors
def analyze(matrix, as_json):
    """Structural flags of a transition matrix."""
    spec = shift_spaces.analyze(fileio.load_matrix(matrix))
    doc = {
        "alphabet_size": spec.alphabet_size,
        "is_01": spec.is_01,
        "essential": spec.essential,
        "irreducible": spec.irreducible,
        "is_permutation": spec.is_permutation,
        "period": spec.period,
        "aperiodic": spec.aperiodic,
        "n0": spec.n0,
        "warnings": spec.warnings(),
    }
    lines = [f"{k} = {doc[k]}" for k in
             ("alphabet_size", "is_01", "essential", "irreducible",
              "is_permutation", "period", "aperiodic", "n0")]
    lines += [f"warning: {w}" for w in spec.warnings()]
    _emit(doc, as_json, lines)


def _invariant_doc(rep) -> dict:
    return {
        "bowen_franks": _group_dict(rep.bf_group),
        "det_id_minus_a": rep.det_id_minus_a,
        "k0": _group_dict(rep.k0_group),
        "k0_unit": list(rep.k0_unit.canonical()[0]) + list(rep.k0_unit.canonical()[1]),
        "e_pair": _pair_dict(rep.e_pair),
        "unit_pair": _pair_dict(rep.unit_pair),
        "kunneth_k0": rep.kunneth_k0.as_dict(),
        "kunneth_k1": rep.kunneth_k1.as_dict(),
    }


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def invariant(matrix, as_json):
    """Full invariant report: BF group, det, K0 with unit, pairs, Kunneth."""
    rep = ck_invariants.invariant_report(fileio.load_matrix(matrix))
    doc = _invariant_doc(rep)
    lines = [
        f"Bowen-Franks group: {rep.bf_group.label()}",
        f"det(I - A) = {rep.det_id_minus_a}",
        f"K0 group: {rep.k0_group.label()}",
        f"e-pair: {rep.e_pair.label()}",
        f"unit-pair: {rep.unit_pair.label()}",
        f"Kunneth K0 part: {rep.kunneth_k0.label()}",
        f"Kunneth K1 part: {rep.kunneth_k1.label()}",
    ]
    _emit(doc, as_json, lines)


@main.command()
@click.argument("matrix_a", type=click.Path(exists=True))
@click.argument("matrix_b", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def compare(matrix_a, matrix_b, as_json):
    """Try to distinguish two shifts; exit 1 when they are distinguished."""
    a = fileio.load_matrix(matrix_a)
    b = fileio.load_matrix(matrix_b)
    rep = ck_invariants.compare(a, b)
    e_a = ck_invariants.e_invariant(a)
    e_b = ck_invariants.e_invariant(b)
    counts = [(n, shift_spaces.periodic_count(a, n), shift_spaces.periodic_count(b, n))
              for n in range(1, 9)]
    doc = {
        "bf_iso": rep.bf_iso,
        "det_equal": rep.det_equal,
        "k0_pair": _verdict_dict(rep.k0_pair),
        "e_pair": _verdict_dict(rep.e_pair),
        "e_pair_labels": [e_a.label(), e_b.label()],
        "periodic_counts": {str(n): [pa, pb] for n, pa, pb in counts},
        "verdict": rep.verdict,
    }
    lines = [
        f"BF groups isomorphic: {rep.bf_iso}",
        f"det(I - A) equal: {rep.det_equal}",
        f"K0 unit pair: {rep.k0_pair.verdict.value} ({rep.k0_pair.certificate})",
        f"e-pair: {rep.e_pair.verdict.value} ({e_a.label()} vs {e_b.label()})",
    ]
    lines += [f"periodic points n={n}: {pa} vs {pb}" for n, pa, pb in counts]
    lines.append(f"verdict: {rep.verdict}")
    _emit(doc, as_json, lines)
    sys.exit(1 if rep.distinguished else 0)


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def bf(matrix, as_json):
    """Bowen-Franks group and det(I - A)."""
    group, det = ck_invariants.bowen_franks(fileio.load_matrix(matrix))
    doc = {"group": _group_dict(group), "det_id_minus_a": det}
    _emit(doc, as_json, [f"BF(A) = {group.label()}", f"det(I - A) = {det}"])


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def k0(matrix, as_json):
    """K0 group with the class of the unit."""
    group, unit = ck_invariants.k0(fileio.load_matrix(matrix))
    torsion, free = unit.canonical()
    doc = {"group": _group_dict(group),
           "unit": list(torsion) + list(free)}
    _emit(doc, as_json, [f"K0(O_A) = {group.label()}",
                         f"[1] = {list(torsion) + list(free)}"])


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def kunneth(matrix, as_json):
    """K-theory types of the tensor square O_A (x) O_A."""
    kk0, kk1 = ck_invariants.kunneth(fileio.load_matrix(matrix))
    doc = {"k0": kk0.as_dict(), "k1": kk1.as_dict()}
    _emit(doc, as_json, [f"K0 part: {kk0.label()}", f"K1 part: {kk1.label()}"])


@main.command(name="edge-graph")
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--out", default="edge_graph", show_default=True,
              help="output file prefix")
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def edge_graph_cmd(matrix, out, as_json):
    """Edge graph matrix A_G with the division pair R, S (A = RS, A_G = SR)."""
    a_g, r, s = shift_spaces.edge_graph(fileio.load_matrix(matrix))
    paths = {}
    for tag, m in (("AG", a_g), ("R", r), ("S", s)):
        path = f"{out}_{tag}.json"
        fileio.save_matrix(m, path, name=tag)
        paths[tag] = path
    doc = {"files": paths, "edges": a_g.rows}
    _emit(doc, as_json,
          [f"wrote {paths['AG']} ({a_g.rows} edges)",
           f"wrote {paths['R']}", f"wrote {paths['S']}"])


@main.group()
def sse():
    """Strong shift equivalence chains."""


@sse.command(name="verify")
@click.argument("chain_file", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def sse_verify(chain_file, as_json):
    """Check every elementary step of a chain; exit 1 on failure."""
    chain = fileio.load_chain(chain_file)
    ok = chain.verify()
    _emit({"steps": len(chain.steps), "verified": ok}, as_json,
          [f"{len(chain.steps)} steps: " + ("verified" if ok else "FAILED")])
    sys.exit(0 if ok else 1)


@sse.command(name="random")
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--steps", default=3, show_default=True)
@click.option("--seed", type=int, default=None,
              help="defaults to SHIFTLAB_SEED or 0")
@click.option("--out", default=None, help="write the chain to this file")
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def sse_random(matrix, steps, seed, out, as_json):
    """Generate a random split/amalgamation chain starting from A."""
    if seed is None:
        seed = int(os.environ.get("SHIFTLAB_SEED", "0"))
    chain = shift_spaces.random_sse_chain(fileio.load_matrix(matrix), steps, seed)
    if out:
        fileio.save_chain(chain, out)
    doc = {
        "seed": seed,
        "sizes": [m.rows for m in chain.matrices],
        "verified": chain.verify(),
        "matrices": [m.to_rows() for m in chain.matrices],
        "steps": [{"R": r.to_rows(), "S": s.to_rows()} for r, s in chain.steps],
    }
    lines = [f"seed = {seed}",
             "sizes: " + " -> ".join(str(m.rows) for m in chain.matrices),
             f"verified: {doc['verified']}"]
    if out:
        doc["file"] = out
        lines.append(f"wrote {out}")
    _emit(doc, as_json, lines)
    sys.exit(0 if doc["verified"] else 1)


@main.group()
def se():
    """Shift equivalence witnesses."""


@se.command(name="verify")
@click.argument("matrix_a", type=click.Path(exists=True))
@click.argument("matrix_b", type=click.Path(exists=True))
@click.argument("matrix_r", type=click.Path(exists=True))
@click.argument("matrix_s", type=click.Path(exists=True))
@click.option("--ell", required=True, type=int, help="lag of the equivalence")
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def se_verify(matrix_a, matrix_b, matrix_r, matrix_s, ell, as_json):
    """Check a lag-ell shift equivalence and its action on e_A."""
    a = fileio.load_matrix(matrix_a)
    b = fileio.load_matrix(matrix_b)
    r = fileio.load_matrix(matrix_r)
    s = fileio.load_matrix(matrix_s)
    try:
        rec = ck_invariants.se_witness_action(r, s, ell, a, b)
    except ck_invariants.ShiftEquivalenceError as exc:
        _emit({"verified": False, "reason": str(exc)}, as_json,
              [f"FAILED: {exc}"])
        sys.exit(1)
    doc = {
        "verified": rec.passed,
        "identity_holds": rec.identity_holds,
        "component_maps_iso": rec.component_maps_iso,
        "tensor_map_iso": rec.tensor_map_iso,
        "maps_e_to_e": rec.maps_e_to_e,
    }
    lines = [f"axioms hold: {rec.identity_holds}",
             f"component maps are isomorphisms: {rec.component_maps_iso}",
             f"tensor map is an isomorphism: {rec.tensor_map_iso}",
             f"e_A maps to e_B: {rec.maps_e_to_e}",
             "verified" if rec.passed else "FAILED"]
    _emit(doc, as_json, lines)
    sys.exit(0 if rec.passed else 1)


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--word", default=None, help="cylinder word, e.g. 121")
@click.option("--check", "check_l", type=int, default=None,
              help="verify measure axioms on cylinders up to this length")
@click.option("--tol", default=1e-9, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def parry(matrix, word, check_l, tol, as_json):
    """Parry measure of a cylinder, or a consistency check."""
    a = fileio.load_matrix(matrix)
    if (word is None) == (check_l is None):
        raise click.UsageError("give exactly one of --word or --check")
    if word is not None:
        symbols = tuple(int(c) for c in (word.split(",") if "," in word else word))
        cm = spectral.parry_cylinder(a, symbols)
        doc = {"word": list(symbols), "measure": cm.value, "empty": cm.empty}
        lines = [f"mu(U_{word}) = {cm.value!r}" + (" (empty cylinder)" if cm.empty else "")]
        _emit(doc, as_json, lines)
        return
    rep = spectral.parry_consistency(a, check_l, tol=tol)
    doc = {
        "L": check_l,
        "total_mass_error": rep.total_mass_error,
        "right_additivity_error": rep.right_additivity_error,
        "left_additivity_error": rep.left_additivity_error,
        "tol": tol,
        "passed": rep.passed,
    }
    lines = [f"total mass error: {rep.total_mass_error:.3e}",
             f"right additivity error: {rep.right_additivity_error:.3e}",
             f"left additivity error: {rep.left_additivity_error:.3e}",
             "passed" if rep.passed else "FAILED"]
    _emit(doc, as_json, lines)
    sys.exit(0 if rep.passed else 1)


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--nmax", required=True, type=int)
@click.option("--tol", default=1e-9, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def kms(matrix, nmax, tol, as_json):
    """KMS value identities up to level nmax, and the inverse temperature."""
    a = fileio.load_matrix(matrix)
    rep = spectral.kms_verify(a, nmax, tol=tol)
    temp = spectral.kms_temperature(a)
    doc = {
        "n_max": nmax,
        "inverse_temperature": temp,
        "scaling_error": rep.scaling_error,
        "recursion_error": rep.recursion_error,
        "normalization_error": rep.normalization_error,
        "tol": tol,
        "passed": rep.passed,
    }
    lines = [f"inverse temperature log(beta) = {temp!r}",
             f"scaling error: {rep.scaling_error:.3e}",
             f"recursion error: {rep.recursion_error:.3e}",
             f"normalization error: {rep.normalization_error:.3e}",
             "passed" if rep.passed else "FAILED"]
    _emit(doc, as_json, lines)
    sys.exit(0 if rep.passed else 1)


@main.command()
@click.argument("matrix", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def entropy(matrix, as_json):
    """Topological entropy log(beta)."""
    a = fileio.load_matrix(matrix)
    pd = spectral.perron(a)
    from math import log
    h = log(pd.beta)
    _emit({"beta": pd.beta, "entropy": h}, as_json,
          [f"beta = {pd.beta!r}", f"entropy = {h!r}"])


@main.group()
def conjugacy():
    """Sliding block code verification."""


@conjugacy.command(name="verify")
@click.argument("phi_file", type=click.Path(exists=True))
@click.argument("psi_file", type=click.Path(exists=True))
@click.option("--lag", "-k", "lag", required=True, type=int)
@click.option("--period", "-p", "period", default=6, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@_input_errors
def conjugacy_verify(phi_file, psi_file, lag, period, as_json):
    """Check psi(phi(x)) = sigma^2K(x) and conversely on periodic points."""
    phi = fileio.load_block_map(phi_file)
    psi = fileio.load_block_map(psi_file)
    ok = block_codes.verify_lag_conjugacy(phi, psi, lag, period)
    _emit({"lag": lag, "period": period, "verified": ok}, as_json,
          [f"lag-{lag} conjugacy on periodic points up to {period}: "
           + ("verified" if ok else "FAILED")])
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
