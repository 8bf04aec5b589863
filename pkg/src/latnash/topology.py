"""Finite topologies as closed-set families.

Topologies are represented by their closed sets (the natural viewpoint
when the generators are closed intervals), each set a bitmask over the
carrier.  On a finite carrier, closure under arbitrary intersections and
finite unions is just closure under the two pairwise operations, computed
to a fixpoint.

Carriers are capped (default 16 elements) because generated families can
approach the full power set.
"""

from latnash import _kernels
from latnash.errors import (
    CarrierMismatch,
    CarrierTooLarge,
    ElementOutOfCarrier,
    NotALattice,
    PreconditionViolated,
    ProductTooLarge,
)
from latnash.order import (
    CheckResult,
    Poset,
    induced_poset,
    is_lattice,
    is_subcomplete,
    product_element_name,
    product_poset,
)
from itertools import product as iter_product

DEFAULT_CARRIER_CAP = 16


def _carrier_cap(cap):
    return DEFAULT_CARRIER_CAP if cap is None else cap


class FiniteTopology:
    """A family of closed subsets of a finite carrier."""

    __slots__ = ("carrier", "_index", "closed_masks")

    def __init__(self, carrier, closed_masks):
        self.carrier = tuple(carrier)
        self._index = {e: i for i, e in enumerate(self.carrier)}
        self.closed_masks = frozenset(closed_masks)

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.carrier == other.carrier and self.closed_masks == other.closed_masks

    __hash__ = None

    def __repr__(self):
        return f"FiniteTopology({len(self.carrier)} points, {len(self.closed_masks)} closed sets)"

    def mask_of(self, subset) -> int:
        m = 0
        for e in subset:
            i = self._index.get(e)
            if i is None:
                raise ElementOutOfCarrier(f"{e!r} is not in the carrier")
            m |= 1 << i
        return m

    def set_of(self, mask) -> frozenset:
        return frozenset(self.carrier[i] for i in range(len(self.carrier))
                         if (mask >> i) & 1)

    def is_closed(self, subset) -> bool:
        return self.mask_of(subset) in self.closed_masks

    def closed_sets(self):
        """Closed sets as frozensets, in canonical (sorted-mask) order."""
        return [self.set_of(m) for m in sorted(self.closed_masks)]

    def closure(self, subset) -> frozenset:
        """Smallest closed superset: the intersection of all closed supersets
        (itself closed, the family being intersection-closed)."""
        target = self.mask_of(subset)
        acc = (1 << len(self.carrier)) - 1
        for m in self.closed_masks:
            if m & target == target:
                acc &= m
        return self.set_of(acc)

    def dump(self) -> str:
        """One closed set per line, elements comma-joined in carrier order,
        lines sorted lexicographically.  Bit-exact for golden tests."""
        lines = []
        for m in self.closed_masks:
            lines.append(",".join(self.carrier[i] for i in range(len(self.carrier))
                                  if (m >> i) & 1))
        return "\n".join(sorted(lines)) + "\n"


def generate_topology(carrier, subbasis, cap: int | None = None) -> FiniteTopology:
    """Smallest topology whose closed sets include the subbasis.

    The family always contains the empty set and the carrier and is closed
    under union and intersection.
    """
    cap = _carrier_cap(cap)
    carrier = tuple(carrier)
    if len(carrier) > cap:
        raise CarrierTooLarge(
            f"carrier has {len(carrier)} elements, generation cap is {cap}")
    index = {e: i for i, e in enumerate(carrier)}
    masks = []
    for s in subbasis:
        m = 0
        for e in s:
            i = index.get(e)
            if i is None:
                raise ElementOutOfCarrier(f"{e!r} is not in the carrier")
            m |= 1 << i
        masks.append(m)
    full = (1 << len(carrier)) - 1
    return FiniteTopology(carrier, _kernels.family_close(masks, full))


def interval_topology(P: Poset, cap: int | None = None) -> FiniteTopology:
    """Topology generated by the closed rays below and above each element."""
    subbasis = [P.down_set(x) for x in P.elements]
    subbasis += [P.up_set(x) for x in P.elements]
    return generate_topology(P.elements, subbasis, cap=cap)


def restrict(T: FiniteTopology, S) -> FiniteTopology:
    """Subspace topology: closed sets are the traces C & S."""
    keep = set(S)
    idx = [i for i, e in enumerate(T.carrier) if e in keep]
    found = {T.carrier[i] for i in idx}
    missing = keep - found
    if missing:
        raise ElementOutOfCarrier(f"not in the carrier: {sorted(missing)}")
    new_carrier = [T.carrier[i] for i in idx]
    remap = {old: new for new, old in enumerate(idx)}
    traces = set()
    for m in T.closed_masks:
        t = 0
        for old in idx:
            if (m >> old) & 1:
                t |= 1 << remap[old]
        traces.add(t)
    return FiniteTopology(new_carrier, traces)


def product_topology(Ts, cap: int | None = None) -> FiniteTopology:
    """Topology on the product carrier generated by closed cylinders.

    Carrier naming matches :func:`latnash.order.product_poset`; a single
    factor is returned unchanged.
    """
    cap = _carrier_cap(cap)
    Ts = list(Ts)
    if not Ts:
        raise ElementOutOfCarrier("product of zero topologies")
    if len(Ts) == 1:
        return Ts[0]
    total = 1
    for T in Ts:
        total *= len(T.carrier)
    if total > cap:
        raise ProductTooLarge(f"product carrier has {total} points, cap is {cap}")
    tuples = list(iter_product(*(T.carrier for T in Ts)))
    carrier = [product_element_name(t) for t in tuples]
    subbasis = []
    for k, T in enumerate(Ts):
        for m in T.closed_masks:
            allowed = {T.carrier[i] for i in range(len(T.carrier)) if (m >> i) & 1}
            cyl = 0
            for pos, t in enumerate(tuples):
                if t[k] in allowed:
                    cyl |= 1 << pos
            subbasis.append(cyl)
    full = (1 << total) - 1
    return FiniteTopology(carrier, _kernels.family_close(subbasis, full))


def finer_than(T1: FiniteTopology, T2: FiniteTopology) -> bool:
    """True iff every closed set of T2 is closed in T1."""
    if T1.carrier != T2.carrier:
        raise CarrierMismatch("topologies live on different carriers")
    return T2.closed_masks <= T1.closed_masks


def check_restriction_lemma(P: Poset, Q, cap: int | None = None) -> CheckResult:
    """Self-test: for subcomplete Q in a lattice P, the interval topology
    of the induced order on Q must equal the restriction to Q of the
    interval topology of P.  A False here means an engine bug.
    """
    sub = is_subcomplete(P, Q)
    if not sub:
        raise PreconditionViolated(
            f"Q is not subcomplete in P (witness {sub.witness})")
    lhs = interval_topology(induced_poset(P, Q), cap=cap)
    rhs = restrict(interval_topology(P, cap=cap), Q)
    if lhs == rhs:
        return CheckResult(True)
    diff = sorted(lhs.closed_masks ^ rhs.closed_masks)
    return CheckResult(False, witness=(lhs.set_of(diff[0]),))


def check_product_interval_lemma(Ls, cap: int | None = None) -> CheckResult:
    """Self-test: the interval topology of a finite product of lattices
    must equal the product of the factor interval topologies.
    """
    Ls = list(Ls)
    for L in Ls:
        r = is_lattice(L)
        if not r:
            raise NotALattice(f"factor is not a lattice (witness {r.witness})")
    lhs = interval_topology(product_poset(Ls, cap=cap), cap=cap)
    rhs = product_topology([interval_topology(L, cap=cap) for L in Ls], cap=cap)
    if lhs == rhs:
        return CheckResult(True)
    diff = sorted(lhs.closed_masks ^ rhs.closed_masks)
    return CheckResult(False, witness=(lhs.set_of(diff[0]),))
