"""Equilibrium computation and order-structure certification.

The brute-force equilibrium set is the canonical oracle: a profile is an
equilibrium iff no player has a profitable feasible unilateral deviation.
Fixed points of the joint and group best-response correspondences are
computed independently and must coincide with the oracle; any mismatch
raises InternalContradiction rather than returning silently.

The extremal iteration uses the max (or min) selection of the group
best-response correspondence.  Monotonicity of this selection follows
from the correspondence being increasing with lattice values: for
x <= x', max C(x) join max C(x') lies in C(x'), which forces
max C(x) <= max C(x').  Starting from the top of S the iterates therefore
decrease and stabilize at the greatest fixed point, i.e. the greatest
equilibrium; dually from the bottom.
"""

from dataclasses import dataclass

from latnash.errors import (
    EmptyPlayerSet,
    InternalContradiction,
    PreconditionViolated,
)
from latnash.games import (
    Game,
    ValidationReport,
    best_response,
    feasible_box,
    joint_response,
    partial_response,
    section,
    validate_supermodular,
)
from latnash.order import (
    CheckResult,
    Correspondence,
    induced_poset,
    is_complete_lattice,
    is_increasing_correspondence,
    is_lattice,
    is_sublattice,
    is_subcomplete,
    to_dot,
)


def stable_set(g: Game, player):
    """Profiles at which the player has no profitable feasible deviation."""
    i = g.player_pos(player)
    table = g.payoffs[player]
    out = []
    for x in g.feasible:
        own = table[x]
        ok = True
        for y in section(g, player, x):
            if table[x[:i] + (y,) + x[i + 1:]] > own:
                ok = False
                break
        if ok:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class EquilibriumSet:
    game: Game
    profiles: tuple
    per_player: dict  # player -> frozenset of stable profiles, kept for audit


def equilibria_bruteforce(g: Game) -> EquilibriumSet:
    """Exact equilibrium set: intersection of the per-player stable sets."""
    per_player = {p: frozenset(stable_set(g, p)) for p in g.players}
    profiles = tuple(x for x in g.feasible
                     if all(x in per_player[p] for p in g.players))
    return EquilibriumSet(game=g, profiles=profiles, per_player=per_player)


def fixed_points(g: Game, correspondence: str = "joint", players=None):
    """Fixed points of the joint (R) or group (Y_I) best-response map.

    Cross-checked against the definitional sets: Fix of the joint map must
    equal the brute-force equilibrium set, and Fix of the group map for a
    player set I must equal the intersection of the stable sets over I.
    """
    if correspondence == "joint":
        fix = tuple(x for x in g.feasible if x in set(joint_response(g, x)))
        oracle = equilibria_bruteforce(g).profiles
        if fix != oracle:
            raise InternalContradiction(
                f"Fix(joint response) != equilibrium set: {fix} vs {oracle}")
        return fix
    if correspondence == "partial":
        if not players:
            raise EmptyPlayerSet("group fixed points need a nonempty player set")
        players = list(players)
        fix = tuple(x for x in g.feasible
                    if x in set(partial_response(g, players, x)))
        stable = [frozenset(stable_set(g, p)) for p in players]
        oracle = tuple(x for x in g.feasible
                       if all(x in s for s in stable))
        if fix != oracle:
            raise InternalContradiction(
                f"Fix(group response {players}) != stable-set intersection")
        return fix
    raise ValueError(f"unknown correspondence kind {correspondence!r}")


def _fold_join(g: Game, profiles):
    it = iter(profiles)
    acc = next(it)
    for p in it:
        acc = g.profile_join(acc, p)
    return acc


def _fold_meet(g: Game, profiles):
    it = iter(profiles)
    acc = next(it)
    for p in it:
        acc = g.profile_meet(acc, p)
    return acc


def extremal_equilibrium(g: Game, direction: str = "greatest",
                         validation: ValidationReport | None = None):
    """Monotone iteration to the greatest or least equilibrium.

    Requires a validated supermodular game.  Returns ``(profile, trace)``
    where the trace lists the distinct iterates from the extremum of S to
    the fixed point.  The result is asserted against the brute-force
    extremum; disagreement raises InternalContradiction.
    """
    if direction not in ("greatest", "least"):
        raise ValueError(f"direction must be 'greatest' or 'least', got {direction!r}")
    if validation is None:
        validation = validate_supermodular(g)
    if not validation.ok:
        raise PreconditionViolated(
            "extremal iteration needs a validated supermodular game")
    fold = _fold_join if direction == "greatest" else _fold_meet
    ahead = (lambda a, b: g.profile_leq(b, a)) if direction == "greatest" \
        else g.profile_leq

    x = fold(g, g.feasible)
    if not g.is_feasible(x):
        raise InternalContradiction(
            f"extremum of S escaped S despite the sublattice verdict: {x}")
    trace = [x]
    for _ in range(len(g.feasible) + 1):
        ys = partial_response(g, g.players, x)
        nxt = fold(g, ys)
        if nxt not in set(ys):
            raise InternalContradiction(
                f"best-response value set is not a sublattice at {x}")
        if not ahead(x, nxt):
            raise InternalContradiction(
                f"iteration failed to be monotone at {x} -> {nxt}")
        if nxt == x:
            break
        x = nxt
        trace.append(x)
    else:
        raise InternalContradiction("iteration exceeded |S| steps")

    oracle = equilibria_bruteforce(g).profiles
    if not oracle:
        raise InternalContradiction(
            "validated supermodular game has no equilibrium")
    want = _extremum_of(g, oracle, direction)
    if x != want:
        raise InternalContradiction(
            f"iteration reached {x} but the brute-force {direction} equilibrium is {want}")
    return x, trace


def _extremum_of(g: Game, profiles, direction: str):
    """Greatest/least element of a profile set under the product order,
    or None if the set has no such element."""
    cmp = g.profile_leq
    for cand in profiles:
        if direction == "greatest":
            if all(cmp(y, cand) for y in profiles):
                return cand
        else:
            if all(cmp(cand, y) for y in profiles):
                return cand
    return None


# --------------------------------------------------------------------------
# correspondences as first-class objects


def individual_response_correspondence(g: Game, player) -> Correspondence:
    """x -> best responses of the player, as a correspondence S -> S_i."""
    dom = g.feasible_poset()
    cod = g.lattices[player]
    mapping = {g.profile_label(x): set(best_response(g, player, x))
               for x in g.feasible}
    return Correspondence(dom, cod, mapping)


def group_response_correspondence(g: Game, players=None) -> Correspondence:
    """x -> group best responses, as a self-correspondence on S."""
    players = list(players) if players else list(g.players)
    if not players:
        raise EmptyPlayerSet("empty player set")
    dom = g.feasible_poset()
    mapping = {g.profile_label(x):
               {g.profile_label(y) for y in partial_response(g, players, x)}
               for x in g.feasible}
    return Correspondence(dom, dom, mapping)


def section_correspondence(g: Game, player) -> Correspondence:
    """x -> feasible deviations of the player at x."""
    dom = g.feasible_poset()
    cod = g.lattices[player]
    mapping = {g.profile_label(x): set(section(g, player, x))
               for x in g.feasible}
    return Correspondence(dom, cod, mapping)


def box_correspondence(g: Game) -> Correspondence:
    """x -> feasible box at x, as a self-correspondence on S."""
    dom = g.feasible_poset()
    mapping = {g.profile_label(x):
               {g.profile_label(y) for y in feasible_box(g, x)}
               for x in g.feasible}
    return Correspondence(dom, dom, mapping)


# --------------------------------------------------------------------------
# hypothesis/conclusion audit for the fixed-point argument


@dataclass(frozen=True)
class FixedPointAudit:
    """Concrete check of the monotone fixed-point theorem on one game:
    hypotheses (complete lattice of profiles, increasing correspondence,
    nonempty subcomplete value sets) and conclusion (nonempty complete
    lattice of fixed points)."""

    hypotheses: dict  # name -> CheckResult
    conclusion: CheckResult

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.hypotheses.values()) and self.conclusion.ok

    def render(self) -> str:
        lines = []
        for name, r in self.hypotheses.items():
            lines.append(f"hypothesis: {name}: {'ok' if r.ok else f'FAIL {r.witness}'}")
        c = self.conclusion
        lines.append(f"conclusion: fixed points form a nonempty complete lattice: "
                     f"{'ok' if c.ok else f'FAIL {c.witness}'}")
        return "\n".join(lines) + "\n"


def tarski_zhou_check(g: Game) -> FixedPointAudit:
    """Verify the fixed-point theorem's hypotheses and conclusion on g."""
    hyps = {}
    names = [g.profile_label(x) for x in g.feasible]
    sub = is_sublattice(g.product_lattice(), names)
    hyps["S is a sublattice of the strategy product (hence a finite complete lattice)"] = sub

    S = g.feasible_poset()

    if sub.ok:
        phi = group_response_correspondence(g)
        hyps["the joint best-response correspondence is increasing"] = \
            is_increasing_correspondence(phi)
        value_result = CheckResult(True)
        for x in g.feasible:
            ys = partial_response(g, g.players, x)
            if not ys:
                value_result = CheckResult(False, witness=(x, "empty value"))
                break
            r = is_sublattice(S, [g.profile_label(y) for y in ys])
            if not r:
                value_result = CheckResult(False, witness=(x,) + r.witness)
                break
            if (_extremum_of(g, ys, "greatest") is None
                    or _extremum_of(g, ys, "least") is None):
                value_result = CheckResult(False, witness=(x, "no max/min"))
                break
        hyps["every response value is a nonempty sublattice with max and min"] = \
            value_result
    else:
        note = CheckResult(False, witness=None,
                           note="not evaluated: S is not a sublattice")
        hyps["the joint best-response correspondence is increasing"] = note
        hyps["every response value is a nonempty sublattice with max and min"] = note

    fix = tuple(x for x in g.feasible
                if x in set(partial_response(g, g.players, x)))
    if not fix:
        conclusion = CheckResult(False, witness=("empty fixed-point set",))
    else:
        induced = induced_poset(g.product_lattice(),
                                [g.profile_label(x) for x in fix])
        r = (is_complete_lattice(induced, exhaustive=True)
             if len(fix) <= 12 else is_complete_lattice(induced))
        conclusion = CheckResult(r.ok, witness=r.witness, mode=r.mode)
    return FixedPointAudit(hypotheses=hyps, conclusion=conclusion)


# --------------------------------------------------------------------------
# full report


@dataclass(frozen=True)
class EquilibriumReport:
    game: Game
    validation: ValidationReport
    equilibria: tuple
    per_player: dict
    nonempty: bool
    induced_is_lattice: CheckResult | None
    induced_is_complete: CheckResult | None
    is_sublattice_of_S: CheckResult | None
    is_subcomplete_in_S: CheckResult | None
    max_equilibrium: tuple | None
    min_equilibrium: tuple | None
    traces: dict | None  # direction -> list of profiles, when iteration ran

    def to_text(self) -> str:
        g = self.game
        lines = [f"game: {g.name or '(unnamed)'}",
                 "players: " + ", ".join(g.players),
                 f"feasible profiles: {len(g.feasible)}",
                 f"supermodular: {'yes' if self.validation.ok else 'no'}"]
        lines.append(f"equilibria ({len(self.equilibria)}):")
        for e in self.equilibria:
            lines.append("  " + g.profile_label(e))
        lines.append(f"nonempty: {_yn(self.nonempty)}")
        lines.append("induced order on E is a lattice: "
                     + _opt(self.induced_is_lattice))
        lines.append("induced order on E is a complete lattice: "
                     + _opt(self.induced_is_complete))
        lines.append("E is a sublattice of S: " + _opt(self.is_sublattice_of_S))
        lines.append("E is subcomplete in S: " + _opt(self.is_subcomplete_in_S))
        if self.max_equilibrium is not None:
            lines.append("greatest equilibrium: "
                         + g.profile_label(self.max_equilibrium))
        if self.min_equilibrium is not None:
            lines.append("least equilibrium: "
                         + g.profile_label(self.min_equilibrium))
        if self.traces is not None:
            for direction in ("greatest", "least"):
                path = " -> ".join(g.profile_label(p)
                                   for p in self.traces[direction])
                lines.append(f"iteration trace ({direction}): {path}")
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        """Hasse diagram of S with equilibrium nodes drawn as boxes."""
        g = self.game
        highlight = {g.profile_label(e) for e in self.equilibria}
        return to_dot(g.feasible_poset(), highlight=highlight, name="feasible_set")


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _opt(r) -> str:
    if r is None:
        return "n/a"
    if r.ok:
        return "yes"
    out = f"no (witness {r.witness})"
    if r.note:
        out += f" [{r.note}]"
    return out


def equilibrium_report(g: Game,
                       validation: ValidationReport | None = None,
                       run_iteration: bool = True) -> EquilibriumReport:
    """Compute E and certify its order structure.

    For a validated supermodular game, nonemptiness of E and completeness
    of its induced order are required outcomes; their failure raises
    InternalContradiction.  Both fixed-point identities are re-derived and
    compared against the brute-force set as part of the computation.
    ``run_iteration=False`` skips the extremal iteration (the traces field
    is then None) without weakening the required verdicts.
    """
    if validation is None:
        validation = validate_supermodular(g)
    eq = equilibria_bruteforce(g)
    fixed_points(g, "joint")
    fixed_points(g, "partial", g.players)

    E = eq.profiles
    nonempty = bool(E)
    induced_is_lattice = induced_is_complete = None
    subl = subc = None
    max_e = min_e = None
    if nonempty:
        labels = [g.profile_label(x) for x in E]
        inducedE = induced_poset(g.product_lattice(), labels)
        induced_is_lattice = is_lattice(inducedE)
        induced_is_complete = (is_complete_lattice(inducedE, exhaustive=True)
                               if len(E) <= 12 else is_complete_lattice(inducedE))
        S = g.feasible_poset()
        if is_lattice(S):
            subl = is_sublattice(S, labels)
            subc = is_subcomplete(S, labels)
        # when S itself is not a lattice, "sublattice of S" has no meaning
        # and both verdicts stay None
        max_e = _extremum_of(g, E, "greatest")
        min_e = _extremum_of(g, E, "least")

    traces = None
    if validation.ok:
        if not nonempty:
            raise InternalContradiction(
                "validated supermodular game produced an empty equilibrium set")
        if not induced_is_complete:
            raise InternalContradiction(
                "equilibrium set of a validated game is not a complete lattice "
                f"(witness {induced_is_complete.witness})")
        if run_iteration:
            top, trace_top = extremal_equilibrium(g, "greatest", validation)
            bot, trace_bot = extremal_equilibrium(g, "least", validation)
            traces = {"greatest": trace_top, "least": trace_bot}
            if top != max_e or bot != min_e:
                raise InternalContradiction("extremal iteration disagrees with report")

    return EquilibriumReport(
        game=g, validation=validation, equilibria=E, per_player=eq.per_player,
        nonempty=nonempty, induced_is_lattice=induced_is_lattice,
        induced_is_complete=induced_is_complete, is_sublattice_of_S=subl,
        is_subcomplete_in_S=subc, max_equilibrium=max_e, min_equilibrium=min_e,
        traces=traces)
