"""Finite poset and lattice algebra.

Elements are opaque strings.  The order relation is stored fully closed as
bitmask rows (``up[i]`` bit ``j`` set iff element ``i <= j``), together
with a linear extension so that the least element of any bound set can be
read off its lowest-rank bit.  Subset suprema are always computed by
scanning the common-bound set directly, never by iterating pairwise joins:
a sup can exist in a poset whose pairwise joins do not.

All boolean structural checks return a :class:`CheckResult`, which is
truthy on success and carries the first counterexample (in a deterministic
element-order scan) on failure.
"""

from dataclasses import dataclass
from itertools import product as iter_product

from latnash import _kernels
from latnash.errors import (
    CycleDetected,
    DuplicateElement,
    EmptySubset,
    NotALattice,
    ProductTooLarge,
    UnknownElement,
)

DEFAULT_PRODUCT_CAP = 10 ** 6
DEFAULT_EXHAUSTIVE_CAP = 12


def _product_cap(cap):
    return DEFAULT_PRODUCT_CAP if cap is None else cap


def _exhaustive_cap(cap):
    return DEFAULT_EXHAUSTIVE_CAP if cap is None else cap


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a structural check: truthy iff it passed.

    ``witness`` holds the first counterexample found; ``mode`` records how
    the verdict was obtained when more than one strategy exists.
    """

    ok: bool
    witness: tuple | None = None
    mode: str | None = None
    note: str | None = None

    def __bool__(self) -> bool:
        return self.ok


class Poset:
    """Immutable finite poset over distinct string identifiers."""

    __slots__ = ("elements", "_index", "_up", "_down", "_topo", "_rank",
                 "_up_t", "_down_t")

    def __init__(self, elements, up_rows, *, _trusted=False):
        if not _trusted:
            raise TypeError("use build_poset / product_poset / induced_poset")
        n = len(elements)
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._up = tuple(up_rows)
        down = [0] * n
        for i in range(n):
            m = self._up[i]
            while m:
                j = (m & -m).bit_length() - 1
                down[j] |= 1 << i
                m &= m - 1
        self._down = tuple(down)
        # linear extension: fewer elements below => earlier rank
        order = sorted(range(n), key=lambda i: (self._down[i].bit_count(), i))
        self._topo = tuple(order)
        rank = [0] * n
        for r, i in enumerate(order):
            rank[i] = r
        self._rank = tuple(rank)
        up_t = [0] * n
        down_t = [0] * n
        for i in range(n):
            r = rank[i]
            m = self._up[i]
            while m:
                j = (m & -m).bit_length() - 1
                up_t[r] |= 1 << rank[j]
                m &= m - 1
            m = self._down[i]
            while m:
                j = (m & -m).bit_length() - 1
                down_t[r] |= 1 << rank[j]
                m &= m - 1
        self._up_t = tuple(up_t)
        self._down_t = tuple(down_t)

    # -- basics ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements)"

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._up == other._up

    __hash__ = None

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"element {x!r} is not in the poset") from None

    def leq(self, x, y) -> bool:
        return (self._up[self.index(x)] >> self.index(y)) & 1 == 1

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def down_set(self, x) -> frozenset:
        """All elements <= x."""
        return frozenset(self._iter_mask(self._down[self.index(x)]))

    def up_set(self, x) -> frozenset:
        """All elements >= x."""
        return frozenset(self._iter_mask(self._up[self.index(x)]))

    def down_mask(self, x) -> int:
        return self._down[self.index(x)]

    def up_mask(self, x) -> int:
        return self._up[self.index(x)]

    def _iter_mask(self, m):
        while m:
            j = (m & -m).bit_length() - 1
            yield self.elements[j]
            m &= m - 1

    # -- bounds ------------------------------------------------------------

    def _sup_ranks(self, ranks):
        """Least element of the common upper-bound set, as a rank, or None."""
        ub = -1
        for r in ranks:
            ub &= self._up_t[r]
        full = (1 << len(self.elements)) - 1
        ub &= full
        if not ub:
            return None
        c = (ub & -ub).bit_length() - 1
        if self._up_t[c] & ub == ub:
            return c
        return None

    def _inf_ranks(self, ranks):
        lb = -1
        for r in ranks:
            lb &= self._down_t[r]
        full = (1 << len(self.elements)) - 1
        lb &= full
        if not lb:
            return None
        c = lb.bit_length() - 1
        if self._down_t[c] & lb == lb:
            return c
        return None

    def join(self, x, y):
        """Least upper bound of {x, y}, or None if it does not exist."""
        r = self._sup_ranks((self._rank[self.index(x)], self._rank[self.index(y)]))
        return None if r is None else self.elements[self._topo[r]]

    def meet(self, x, y):
        """Greatest lower bound of {x, y}, or None."""
        r = self._inf_ranks((self._rank[self.index(x)], self._rank[self.index(y)]))
        return None if r is None else self.elements[self._topo[r]]

    def sup(self, subset):
        """Sup of a nonempty subset, by scanning common upper bounds."""
        ranks = [self._rank[self.index(x)] for x in subset]
        if not ranks:
            raise EmptySubset("sup of an empty subset")
        r = self._sup_ranks(ranks)
        return None if r is None else self.elements[self._topo[r]]

    def inf(self, subset):
        """Inf of a nonempty subset, by scanning common lower bounds."""
        ranks = [self._rank[self.index(x)] for x in subset]
        if not ranks:
            raise EmptySubset("inf of an empty subset")
        r = self._inf_ranks(ranks)
        return None if r is None else self.elements[self._topo[r]]

    # -- structure ----------------------------------------------------------

    def covers(self):
        """Covering pairs (a, b): a < b with nothing strictly between."""
        n = len(self.elements)
        out = []
        for i in range(n):
            ui = self._up[i]
            for j in range(n):
                if i == j or not (ui >> j) & 1:
                    continue
                between = ui & self._down[j] & ~((1 << i) | (1 << j))
                if not between:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def top(self):
        """Greatest element, or None."""
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self._down[i] == full:
                return self.elements[i]
        return None

    def bottom(self):
        full = (1 << len(self.elements)) - 1
        for i in range(len(self.elements)):
            if self._up[i] == full:
                return self.elements[i]
        return None


# --------------------------------------------------------------------------
# construction


def build_poset(elements, order_pairs) -> Poset:
    """Build a poset from any generating set of order pairs.

    The relation is closed reflexively and transitively, so callers may
    hand over a Hasse diagram, a full order, or anything in between.
    Rejects inputs whose closure violates antisymmetry.
    """
    elements = list(elements)
    if not elements:
        raise EmptySubset("a poset needs at least one element")
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateElement(f"duplicate element {e!r}")
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rows = [0] * n
    for a, b in order_pairs:
        if a not in index:
            raise UnknownElement(f"order pair references unknown element {a!r}")
        if b not in index:
            raise UnknownElement(f"order pair references unknown element {b!r}")
        rows[index[a]] |= 1 << index[b]
    rows = _kernels.transitive_closure(rows, n)
    down = [0] * n
    for i in range(n):
        m = rows[i]
        while m:
            j = (m & -m).bit_length() - 1
            down[j] |= 1 << i
            m &= m - 1
    for i in range(n):
        both = rows[i] & down[i]
        if both != (1 << i):
            j = (both & ~(1 << i))
            j = (j & -j).bit_length() - 1
            raise CycleDetected(
                f"elements {elements[i]!r} and {elements[j]!r} are mutually comparable"
            )
    return Poset(elements, rows, _trusted=True)


def chain(elements) -> Poset:
    """Total order in the given element order."""
    elements = list(elements)
    pairs = [(elements[i], elements[i + 1]) for i in range(len(elements) - 1)]
    return build_poset(elements, pairs)


def antichain(elements) -> Poset:
    """Poset with no nontrivial comparabilities."""
    return build_poset(elements, [])


def product_element_name(parts) -> str:
    return "(" + ",".join(parts) + ")"


def product_poset(factors, cap: int | None = None) -> Poset:
    """Product poset under the componentwise order.

    Elements are tuples rendered as parenthesized comma-joined strings in
    row-major order (first factor slowest).  A single factor is returned
    unchanged.
    """
    cap = _product_cap(cap)
    factors = list(factors)
    if not factors:
        raise EmptySubset("product of zero factors")
    total = 1
    for f in factors:
        total *= len(f)
    if total > cap:
        raise ProductTooLarge(f"product has {total} elements, cap is {cap}")
    if len(factors) == 1:
        return factors[0]
    rows = factors[0]._up
    for f in factors[1:]:
        rows = _product_rows(rows, f._up)
    names = [product_element_name(t)
             for t in iter_product(*(f.elements for f in factors))]
    return Poset(names, rows, _trusted=True)


def _product_rows(rows_a, rows_b):
    """Rows of the binary product, row-major over (i, j) -> i*nb + j.

    Each product row is assembled with word arithmetic: tile the b-row
    across all a-blocks, then mask to the blocks permitted by the a-row.
    """
    na, nb = len(rows_a), len(rows_b)
    block = (1 << nb) - 1
    rep = ((1 << (na * nb)) - 1) // block
    tiles = [rb * rep for rb in rows_b]
    out = []
    for ra in rows_a:
        mask = 0
        m = ra
        while m:
            a = (m & -m).bit_length() - 1
            mask |= block << (a * nb)
            m &= m - 1
        for t in tiles:
            out.append(t & mask)
    return out


def induced_poset(parent: Poset, members) -> Poset:
    """Restriction of the parent's order to a nonempty subset.

    Keeps the parent's element order and labels.
    """
    members = set(members)
    if not members:
        raise EmptySubset("induced poset needs a nonempty subset")
    keep = [i for i, e in enumerate(parent.elements) if e in members]
    found = {parent.elements[i] for i in keep}
    missing = members - found
    if missing:
        raise UnknownElement(f"elements not in parent poset: {sorted(missing)}")
    rows = []
    for i in keep:
        row = 0
        for newj, j in enumerate(keep):
            if (parent._up[i] >> j) & 1:
                row |= 1 << newj
        rows.append(row)
    return Poset([parent.elements[i] for i in keep], rows, _trusted=True)


# --------------------------------------------------------------------------
# lattice checks


def join(P: Poset, x, y):
    return P.join(x, y)


def meet(P: Poset, x, y):
    return P.meet(x, y)


def sup_subset(P: Poset, subset):
    return P.sup(subset)


def inf_subset(P: Poset, subset):
    return P.inf(subset)


def _scan(P: Poset, member_indices):
    members = [P._rank[i] for i in member_indices]
    mask = 0
    for r in members:
        mask |= 1 << r
    return _kernels.pair_scan(P._up_t, P._down_t, members, mask)


def is_lattice(P: Poset) -> CheckResult:
    """Every pair has a join and a meet."""
    idx = list(range(len(P.elements)))
    code, p, q, _ = _scan(P, idx)
    if code == _kernels.SCAN_OK:
        return CheckResult(True)
    kind = "join" if code == _kernels.SCAN_NO_JOIN else "meet"
    return CheckResult(False, witness=(P.elements[p], P.elements[q], None, kind))

def is_complete_lattice(P: Poset, *, exhaustive: bool = False,
                        cap: int | None = None) -> CheckResult:
    """Every nonempty subset has a sup and an inf.

    A finite lattice is automatically complete, so the default mode just
    defers to :func:`is_lattice`.  The exhaustive mode really enumerates
    all ``2^|P| - 1`` nonempty subsets (|P| <= cap) and exists so tests can
    confront the definition directly.
    """
    if not exhaustive:
        r = is_lattice(P)
        return CheckResult(r.ok, witness=r.witness, mode="pairwise")
    cap = _exhaustive_cap(cap)
    n = len(P.elements)
    if n > cap:
        raise ProductTooLarge(
            f"exhaustive completeness over 2^{n} subsets exceeds cap 2^{cap}")
    full = (1 << n) - 1
    ups = [full] * (1 << n)
    downs = [full] * (1 << n)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        r = P._rank[low]
        ups[m] = ups[rest] & P._up_t[r]
        downs[m] = downs[rest] & P._down_t[r]
        ub = ups[m]
        if not ub or P._up_t[(ub & -ub).bit_length() - 1] & ub != ub:
            subset = tuple(P.elements[i] for i in range(n) if (m >> i) & 1)
            return CheckResult(False, witness=(subset, None, "sup"),
                               mode="exhaustive")
        lb = downs[m]
        if not lb or P._down_t[lb.bit_length() - 1] & lb != lb:
            subset = tuple(P.elements[i] for i in range(n) if (m >> i) & 1)
            return CheckResult(False, witness=(subset, None, "inf"),
                               mode="exhaustive")
    return CheckResult(True, mode="exhaustive")


def _subset_indices(P: Poset, S):
    S = set(S)
    if not S:
        raise EmptySubset("subset is empty")
    idx = []
    for i, e in enumerate(P.elements):
        if e in S:
            idx.append(i)
            S.remove(e)
    if S:
        raise UnknownElement(f"elements not in poset: {sorted(S)}")
    return idx


def is_sublattice(P: Poset, S) -> CheckResult:
    """Is S closed under the AMBIENT joins and meets of P?

    Raises NotALattice if P itself lacks a join/meet needed by some pair
    of S.  Note that a set failing this test can still be a lattice in its
    induced order; the two notions differ exactly when a pairwise bound
    escapes S.
    """
    idx = _subset_indices(P, S)
    code, p, q, bound = _scan(P, idx)
    if code == _kernels.SCAN_OK:
        return CheckResult(True)
    x, y = P.elements[idx[p]], P.elements[idx[q]]
    if code in (_kernels.SCAN_NO_JOIN, _kernels.SCAN_NO_MEET):
        kind = "join" if code == _kernels.SCAN_NO_JOIN else "meet"
        raise NotALattice(f"ambient poset has no {kind} for {x!r}, {y!r}")
    kind = "join" if code == _kernels.SCAN_JOIN_ESCAPES else "meet"
    esc = P.elements[P._topo[bound]]
    return CheckResult(False, witness=(x, y, esc, kind))


def is_subcomplete(P: Poset, S, cap: int | None = None) -> CheckResult:
    """Does every nonempty subset of S have its ambient sup and inf in S?

    Exhaustive for |S| <= cap.  For larger S the verdict is decided by the
    pairwise test (in a finite ambient lattice closure under pairs implies
    closure under every subset) and flagged ``finite-equivalence``.
    """
    cap = _exhaustive_cap(cap)
    idx = _subset_indices(P, S)
    k = len(idx)
    if k > cap:
        r = is_sublattice(P, S)
        return CheckResult(r.ok, witness=r.witness, mode="finite-equivalence")
    ranks = [P._rank[i] for i in idx]
    smask = 0
    for r in ranks:
        smask |= 1 << r
    n = len(P.elements)
    full = (1 << n) - 1
    ups = [full] * (1 << k)
    downs = [full] * (1 << k)
    for m in range(1, 1 << k):
        low = (m & -m).bit_length() - 1
        rest = m & (m - 1)
        ups[m] = ups[rest] & P._up_t[ranks[low]]
        downs[m] = downs[rest] & P._down_t[ranks[low]]
        subset = lambda: tuple(P.elements[idx[t]] for t in range(k) if (m >> t) & 1)
        ub = ups[m]
        if not ub:
            raise NotALattice(f"ambient poset has no sup for {subset()}")
        c = (ub & -ub).bit_length() - 1
        if P._up_t[c] & ub != ub:
            raise NotALattice(f"ambient poset has no sup for {subset()}")
        if not (smask >> c) & 1:
            esc = P.elements[P._topo[c]]
            return CheckResult(False, witness=(subset(), esc, "sup"),
                               mode="exhaustive")
        lb = downs[m]
        if not lb:
            raise NotALattice(f"ambient poset has no inf for {subset()}")
        c = lb.bit_length() - 1
        if P._down_t[c] & lb != lb:
            raise NotALattice(f"ambient poset has no inf for {subset()}")
        if not (smask >> c) & 1:
            esc = P.elements[P._topo[c]]
            return CheckResult(False, witness=(subset(), esc, "inf"),
                               mode="exhaustive")
    return CheckResult(True, mode="exhaustive")


# --------------------------------------------------------------------------
# correspondences


class Correspondence:
    """Set-valued map from a poset to a poset, with nonempty images."""

    __slots__ = ("domain", "codomain", "mapping")

    def __init__(self, domain: Poset, codomain: Poset, mapping):
        self.domain = domain
        self.codomain = codomain
        frozen = {}
        for t in domain.elements:
            if t not in mapping:
                raise UnknownElement(f"no image given for domain element {t!r}")
            img = frozenset(mapping[t])
            if not img:
                raise EmptySubset(f"image of {t!r} is empty")
            for x in img:
                codomain.index(x)
            frozen[t] = img
        extra = set(mapping) - set(domain.elements)
        if extra:
            raise UnknownElement(f"images for non-domain elements: {sorted(extra)}")
        self.mapping = frozen

    def __call__(self, t):
        return self.mapping[t]


def is_increasing_correspondence(phi: Correspondence) -> CheckResult:
    """For all t <= t', x in phi(t), x' in phi(t'):
    x meet x' lands in phi(t) and x join x' lands in phi(t').

    t = t' is included, so every image must in particular be closed under
    pairwise meets and joins.  Pairs with EQUAL images reduce to exactly
    that closure condition, so each distinct image is checked once and the
    pair scan only runs where the images differ.
    """
    dom, cod = phi.domain, phi.codomain
    cidx = cod._index
    meets, joins = {}, {}

    def meet_of(x, x2):
        key = (x, x2) if cidx[x] <= cidx[x2] else (x2, x)
        got = meets.get(key)
        if got is None:
            got = cod.meet(x, x2)
            if got is None:
                raise NotALattice(f"codomain has no meet for {x!r}, {x2!r}")
            meets[key] = got
        return got

    def join_of(x, x2):
        key = (x, x2) if cidx[x] <= cidx[x2] else (x2, x)
        got = joins.get(key)
        if got is None:
            got = cod.join(x, x2)
            if got is None:
                raise NotALattice(f"codomain has no join for {x!r}, {x2!r}")
            joins[key] = got
        return got

    first_rep = {}
    for t in dom.elements:
        first_rep.setdefault(phi(t), t)
    for img, t in first_rep.items():
        ordered = sorted(img, key=cidx.__getitem__)
        for i, x in enumerate(ordered):
            for x2 in ordered[i:]:
                lo = meet_of(x, x2)
                if lo not in img:
                    return CheckResult(False, witness=(t, t, x, x2, lo, "meet"))
                hi = join_of(x, x2)
                if hi not in img:
                    return CheckResult(False, witness=(t, t, x, x2, hi, "join"))

    for t in dom.elements:
        img_t = phi(t)
        ordered_t = sorted(img_t, key=cidx.__getitem__)
        for t2 in dom.elements:
            if not dom.leq(t, t2):
                continue
            img_t2 = phi(t2)
            if img_t2 == img_t:
                continue
            for x in ordered_t:
                for x2 in sorted(img_t2, key=cidx.__getitem__):
                    lo = meet_of(x, x2)
                    if lo not in img_t:
                        return CheckResult(False,
                                           witness=(t, t2, x, x2, lo, "meet"))
                    hi = join_of(x, x2)
                    if hi not in img_t2:
                        return CheckResult(False,
                                           witness=(t, t2, x, x2, hi, "join"))
    return CheckResult(True)


# --------------------------------------------------------------------------
# export


def hasse_edges(P: Poset):
    """Transitive reduction of the strict order, as covering pairs."""
    return P.covers()


def to_dot(P: Poset, highlight=(), name: str = "poset") -> str:
    """DOT digraph of the Hasse diagram, bottom-to-top.

    Elements in ``highlight`` get ``shape=box``; all others ``shape=ellipse``.
    """
    highlight = set(highlight)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in P.elements:
        shape = "box" if e in highlight else "ellipse"
        lines.append(f'  "{e}" [label="{e}", shape={shape}];')
    for a, b in P.covers():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# random instances (used by the verify command and by tests)


def random_lattice(rng, max_size: int = 8, min_size: int = 2) -> Poset:
    """Random finite lattice: a sublattice of a small grid, relabeled.

    Sampled by closing a random seed subset of a product of chains under
    componentwise joins and meets; the induced poset of such a subset is
    always a lattice.
    """
    for _ in range(200):
        k = rng.randint(2, 3)
        lengths = [rng.randint(2, 3) for _ in range(k)]
        grid = product_poset([chain([str(v) for v in range(ln)])
                              for ln in lengths])
        pool = list(grid.elements)
        seeds = rng.sample(pool, rng.randint(2, min(6, len(pool))))
        members = _close_in_lattice(grid, seeds)
        if min_size <= len(members) <= max_size:
            sub = induced_poset(grid, members)
            relabel = {e: f"e{i}" for i, e in enumerate(sub.elements)}
            return build_poset([relabel[e] for e in sub.elements],
                               [(relabel[a], relabel[b]) for a, b in sub.covers()])
    # ill-tuned parameters can always fall back to a chain
    return chain([f"e{i}" for i in range(min_size)])


def random_sublattice(rng, P: Poset):
    """Nonempty subset of a lattice P closed under P's joins and meets."""
    seeds = rng.sample(list(P.elements), rng.randint(1, max(1, len(P.elements) // 2)))
    return _close_in_lattice(P, seeds)


def _close_in_lattice(P: Poset, seeds):
    members = set(seeds)
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(members):
                for c in (P.join(a, b), P.meet(a, b)):
                    if c is None:
                        raise NotALattice("closure requires a lattice ambient")
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return members
