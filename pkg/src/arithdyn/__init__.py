"""Finite-level arithmetic dynamics workbench: closed points of monogenic
orders, truncated residue characters under the Frobenius monoid, periodic
orbit packets, rational Witt vectors, and partial zeta products."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .arith import Factorization, FiniteField, dlog, factorize, finite_field, mult_order, primitive_root
from .characters import (
    ColimitPoint,
    OrderMap,
    TruncatedCharacter,
    char_value,
    frobenius,
    galois_twist,
    generic_fixed_point_obstruction,
    normalize,
    pushforward,
    rho,
)
from .errors import ArithDynError
from .flow import GenericPoint, LogTime, SuspensionPoint, flow, is_periodic, orbit_length_spectrum, suspend
from .lemma5 import Lemma5Witness, lemma5_witness
from .packets import (
    PacketPoint,
    act,
    canonicalize,
    fiber_label,
    isotropy_at_level,
    isotropy_symbolic,
    stable_level,
    union_index,
)
from .scheme import ClosedPoint, MonogenicOrder, census, is_maximal_at, split_prime
from .witt import (
    GhostVector,
    TeichCombo,
    WittRat,
    evaluate,
    frobenius_w,
    ghost,
    teich,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    zero_set,
)
from .zeta import (
    FieldCatalogEntry,
    PartialZeta,
    RestrictedCharacter,
    component_count,
    component_label,
    euler_partial,
    ruelle_partial,
)
