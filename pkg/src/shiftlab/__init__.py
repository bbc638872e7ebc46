"""Conjugacy invariants of topological Markov shifts.

Exact integer linear algebra (Smith and Hermite forms), finitely generated
abelian groups with distinguished elements, the Cuntz-Krieger pair
invariant, Bowen-Franks and K-theory groups, strong shift equivalence
machinery, sliding block codes, and Perron/Parry/KMS numerics.
"""

from .intlinalg import IntMatrix, Lattice, SmithForm, hnf, kernel, snf, solve
from .fgab import (
    Equivalence,
    FgAbGroup,
    GroupElement,
    GroupHom,
    PairInvariant,
    PairVerdict,
    element_equal,
    induced_hom,
    pair_equiv,
    tensor,
)
from .ck_invariants import (
    CompareReport,
    InvariantReport,
    WitnessRecord,
    bowen_franks,
    compare,
    e_invariant,
    invariant_report,
    k0,
    kunneth,
    se_witness_action,
    sse_witness_action,
    unit_invariant,
)
from .shift_spaces import (
    MarkovShiftSpec,
    SseChain,
    Word,
    analyze,
    edge_graph,
    in_split,
    out_split,
    periodic_count,
    random_sse_chain,
    verify_se,
    verify_sse_chain,
    verify_sse_step,
    words,
)
from .block_codes import (
    BlockMap,
    PeriodicPoint,
    apply_periodic,
    apply_word,
    compose,
    higher_block_code,
    verify_lag_conjugacy,
)
from .spectral import (
    PerronData,
    entropy,
    kms_temperature,
    kms_values,
    kms_verify,
    parry_consistency,
    parry_cylinder,
    perron,
)

__version__ = "0.1.0"
