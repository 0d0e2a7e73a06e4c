"""Rewriting systems for the presented algebras: orientation, completion
up to a weight bound, normal forms, bigraded Hilbert counts, and the
verification suites built on them (filtration, reversal stability,
inclusion transport, dimension comparison, repair search).

The well-order is weight-lex (see algebra.MonomialOrder).  Every rule
keeps the weight of each right-hand word at or below the weight of its
left-hand word, so no reduction ever increases word weight.  Completion
restricted to superpositions of weight <= W is therefore sound on the
universe of words of weight <= W: reductions never leave it.

>>> rs = complete(orient(signature(3)), 20)
>>> sorted(normal_form("SH", rs))
['', 'HS']
>>> normal_form("SS", rs) == ZERO
True
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .tables import BigradedDimTable, CheckItem, CheckReport
from .algebra import (
    EVEN,
    ZERO,
    MonomialOrder,
    Polynomial,
    Relation,
    Signature,
    Word,
    default_order,
    defining_relations,
    poly,
    reverse_poly,
    signature,
    unshifted_degree,
    word_degree,
    word_level,
)

INCOMPLETE = "incomplete"
COMPLETE = "complete-up-to-bound"

_STEP_LIMIT = 10 ** 6
_NODE_LIMIT = 10 ** 6


class OrderRejectedError(ValueError):
    """The monomial order does not make the designated left side of a
    relation its strict maximum."""

    def __init__(self, relation: Relation, message: str):
        self.relation = relation
        super().__init__(f"relation with left side {relation.lhs!r}: {message}")


class TruncationError(RuntimeError):
    """A reduction produced a word beyond the certified weight bound."""

    def __init__(self, word: Word, bound: int):
        self.word = word
        self.bound = bound
        super().__init__(
            f"word {word!r} exceeds the certified weight bound {bound}; "
            f"recomplete with a larger bound")


class CompletionError(RuntimeError):
    """A critical pair reduced to the unit: the relations force 1 = 0,
    so no orientable rule exists for the pair."""

    def __init__(self, superposition: Word):
        self.superposition = superposition
        super().__init__(
            f"critical pair at {superposition!r} reduces to the unit; "
            f"the presented algebra collapses")


class InsufficientWeightBoundError(ValueError):
    """The system's weight bound does not certify the requested degree."""

    def __init__(self, have: int, need: int):
        self.have = have
        self.need = need
        super().__init__(
            f"weight bound {have} certified, but the degree bound needs "
            f"{need}; recomplete with weight_bound >= {need}")


class RepairError(RuntimeError):
    """No augmentation reconciles the presentation with the target table."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Polynomial

    def render(self) -> str:
        if not self.rhs:
            rhs = "0"
        else:
            rhs = " + ".join(w if w else "1" for w in sorted(self.rhs))
        return f"{self.lhs} -> {rhs}"


@dataclass(frozen=True)
class RewriteSystem:
    sig: Signature
    order: MonomialOrder
    rules: tuple[RewriteRule, ...]
    weight_bound: int = 0
    completion_status: str = INCOMPLETE

    def rule_map(self) -> dict[Word, Polynomial]:
        return {r.lhs: r.rhs for r in self.rules}

    def max_lhs_len(self) -> int:
        return max((len(r.lhs) for r in self.rules), default=0)


def orient(sig: Signature, order: Optional[MonomialOrder] = None) -> RewriteSystem:
    """Turn the defining relations into rules lhs -> rhs.

    Raises OrderRejectedError unless the designated left side of every
    relation is the strict maximum of the relation under the order.
    """
    order = order if order is not None else default_order(sig)
    rules = []
    for rel in defining_relations(sig.n):
        lw = order.weight(rel.lhs)
        for w in rel.rhs:
            if not order.less(w, rel.lhs):
                raise OrderRejectedError(
                    rel, f"right-hand word {w!r} is not below the left side")
            if order.weight(w) > lw:
                raise OrderRejectedError(
                    rel, f"right-hand word {w!r} has larger weight")
        rules.append(RewriteRule(rel.lhs, rel.rhs))
    rules.sort(key=lambda r: order.sort_key(r.lhs))
    return RewriteSystem(sig=sig, order=order, rules=tuple(rules))


def apply_rule(word: Word, rule: RewriteRule, pos: int) -> Polynomial:
    """One replacement of rule.lhs inside word at the given position."""
    if not word.startswith(rule.lhs, pos):
        raise ValueError(f"{rule.lhs!r} does not occur in {word!r} at {pos}")
    head, tail = word[:pos], word[pos + len(rule.lhs):]
    return frozenset(head + r + tail for r in rule.rhs)


def _leftmost_match(word: Word, rules: tuple[RewriteRule, ...]):
    for i in range(len(word)):
        for rule in rules:
            if word.startswith(rule.lhs, i):
                return i, rule
    return None


def _poly_nf(p: Iterable[Word], rules: tuple[RewriteRule, ...],
             weight_fn, weight_cap: Optional[int]) -> Polynomial:
    """Full reduction of a polynomial; leftmost strategy per word.

    F2 linearity lets each word occurrence reduce independently, with
    the results combined by symmetric difference.
    """
    acc: set = set()
    stack = list(p)
    steps = 0
    while stack:
        w = stack.pop()
        steps += 1
        if steps > _STEP_LIMIT:
            raise RuntimeError("reduction exceeded the step limit")
        if weight_cap is not None and weight_fn(w) > weight_cap:
            raise TruncationError(w, weight_cap)
        m = _leftmost_match(w, rules)
        if m is None:
            acc ^= {w}
        else:
            i, rule = m
            head, tail = w[:i], w[i + len(rule.lhs):]
            stack.extend(head + r + tail for r in rule.rhs)
    return frozenset(acc)


def normal_form(p, rs: RewriteSystem) -> Polynomial:
    """Reduce a word or polynomial to its normal form under rs.

    For a completed system every intermediate word must stay within the
    certified weight bound; otherwise TruncationError is raised.
    """
    if isinstance(p, str):
        p = frozenset({p})
    cap = rs.weight_bound if rs.completion_status == COMPLETE else None
    return _poly_nf(p, rs.rules, rs.order.weight, cap)


def _interreduce(rule_map: dict[Word, Polynomial], order: MonomialOrder
                 ) -> dict[Word, Polynomial]:
    """Make every lhs irreducible by the other rules and every rhs fully
    reduced.  Dismantled rules re-enter as equations."""
    changed = True
    while changed:
        changed = False
        for lhs in sorted(rule_map, key=order.sort_key):
            rhs = rule_map[lhs]
            others = tuple(RewriteRule(l, r) for l, r in rule_map.items()
                           if l != lhs)
            if _leftmost_match(lhs, others) is not None:
                del rule_map[lhs]
                eq = _poly_nf(frozenset({lhs}) ^ rhs, others,
                              order.weight, None)
                if eq:
                    top = order.max_word(eq)
                    if top == "":
                        raise CompletionError(lhs)
                    rule_map[top] = eq ^ {top}
                changed = True
                break
            new_rhs = _poly_nf(rhs, others, order.weight, None)
            if new_rhs != rhs:
                rule_map[lhs] = new_rhs
                changed = True
    return rule_map


def _overlap_words(l1: Word, l2: Word) -> Iterator[tuple[Word, int]]:
    """Superposition words where a proper suffix of l1 is a proper
    prefix of l2, together with the offset of l2 in the superposition.
    Containments do not occur between inter-reduced rules."""
    for k in range(1, min(len(l1), len(l2))):
        if l1.endswith(l2[:k]):
            yield l1 + l2[k:], len(l1) - k


def complete(rs: RewriteSystem, weight_bound: int) -> RewriteSystem:
    """Knuth-Bendix completion restricted to superpositions of weight at
    most weight_bound.  Output is inter-reduced and sorted, hence
    canonical regardless of processing order."""
    order = rs.order
    rule_map = {r.lhs: r.rhs for r in rs.rules}
    while True:
        if len(rule_map) > 400:
            raise RuntimeError("completion generated too many rules")
        rule_map = _interreduce(rule_map, order)
        rules = tuple(RewriteRule(l, r) for l, r in
                      sorted(rule_map.items(), key=lambda kv: order.sort_key(kv[0])))
        pending = []
        for r1, r2 in itertools.product(rules, repeat=2):
            for sup, off in _overlap_words(r1.lhs, r2.lhs):
                if order.weight(sup) > weight_bound:
                    continue
                p1 = _poly_nf(apply_rule(sup, r1, 0), rules, order.weight, None)
                p2 = _poly_nf(apply_rule(sup, r2, off), rules, order.weight, None)
                diff = p1 ^ p2
                if diff:
                    pending.append((sup, diff))
        if not pending:
            break
        pending.sort(key=lambda sd: order.sort_key(sd[0]))
        for sup, diff in pending:
            diff = _poly_nf(diff, tuple(RewriteRule(l, r) for l, r in rule_map.items()),
                            order.weight, None)
            if not diff:
                continue
            top = order.max_word(diff)
            if top == "":
                raise CompletionError(sup)
            rule_map[top] = diff ^ {top}
    rules = tuple(RewriteRule(l, r) for l, r in
                  sorted(rule_map.items(), key=lambda kv: order.sort_key(kv[0])))
    for r in rules:
        lw = order.weight(r.lhs)
        assert all(order.weight(w) <= lw for w in r.rhs)
    return RewriteSystem(sig=rs.sig, order=order, rules=rules,
                         weight_bound=weight_bound,
                         completion_status=COMPLETE)


# ---------------------------------------------------------------------------
# Hilbert counts


def required_weight_bound(sig: Signature, degree_bound: int) -> int:
    """Weight needed so every irreducible word of unshifted degree at
    most degree_bound fits: room for the H block, one S/T letter at its
    maximal weight, the Y block, and a safety margin."""
    n = sig.n
    return (n + 1) + (n + 1) + math.ceil((degree_bound + n) / n) + 4


def irreducible_words(rs: RewriteSystem, max_weight: int) -> Iterator[Word]:
    """All words of weight <= max_weight avoiding every rule lhs as a
    factor, by depth-first extension."""
    lhs_set = {r.lhs for r in rs.rules}
    maxlen = rs.max_lhs_len()
    weights = rs.order.weight_map
    alphabet = rs.sig.alphabet
    nodes = 0

    def extend(word: Word, weight: int) -> Iterator[Word]:
        nonlocal nodes
        nodes += 1
        if nodes > _NODE_LIMIT:
            raise RuntimeError("irreducible-word enumeration exceeded node limit")
        yield word
        for c in alphabet:
            w2 = weight + weights[c]
            if w2 > max_weight:
                continue
            new = word + c
            tail = new[-maxlen:] if maxlen else new
            if any(tail.endswith(l) for l in lhs_set):
                continue
            yield from extend(new, w2)

    yield from extend("", 0)


def hilbert(rs: RewriteSystem, degree_bound: int) -> BigradedDimTable:
    """Count irreducible words per (unshifted degree, level) for degrees
    0..degree_bound.  Refuses when the certified weight bound cannot
    cover the requested degrees."""
    if rs.completion_status != COMPLETE:
        raise ValueError("hilbert requires a completed system")
    need = required_weight_bound(rs.sig, degree_bound)
    if rs.weight_bound < need:
        raise InsufficientWeightBoundError(rs.weight_bound, need)
    counts: dict[tuple[int, int], int] = {}
    for w in irreducible_words(rs, rs.weight_bound):
        d = unshifted_degree(w, rs.sig)
        if 0 <= d <= degree_bound:
            key = (d, word_level(w))
            counts[key] = counts.get(key, 0) + 1
    return BigradedDimTable.from_dict(counts, degree_bound)


# ---------------------------------------------------------------------------
# Verification suites


def filtration_check(rs: RewriteSystem) -> CheckReport:
    """Every rule must not raise the level: level(rhs word) <= level(lhs).

    This is the algebraic shadow of subadditivity of critical levels
    under the product."""
    items = []
    for r in rs.rules:
        lv = word_level(r.lhs)
        bad = sorted(w for w in r.rhs if word_level(w) > lv)
        items.append(CheckItem(
            name=r.render(),
            passed=not bad,
            detail=f"level raised by {bad}" if bad else ""))
    return CheckReport(title=f"filtration (n={rs.sig.n})", items=tuple(items))


def anti_automorphism_check(sig: Signature, rs: RewriteSystem) -> CheckReport:
    """Letter-order reversal fixes the generators and reverses products,
    so the reversal of every defining relation must reduce to zero."""
    items = []
    for rel in defining_relations(sig.n):
        rev = reverse_poly(rel.as_polynomial())
        nf = normal_form(rev, rs)
        items.append(CheckItem(
            name=f"reverse of ({rel.lhs} = rhs)",
            passed=nf == ZERO,
            detail="" if nf == ZERO else f"residue {sorted(nf)}"))
    return CheckReport(title=f"reversal stability (n={sig.n})", items=tuple(items))


def heredity_check(n: int, weight_bound: Optional[int] = None) -> CheckReport:
    """Transport of classes under the dimension-raising inclusion, as
    normal-form identities in the algebra for n+1.

    Even n (odd target): H^2 S Y H = H^3 S Y + H^2 Y and
    H Y H^2 S = H^3 S Y; when the target picks up a correction term in
    its commutation rule, that term exceeds the nilpotence degree of H
    and dies, so the identities are parity-uniform.
    Odd n (even target): the transported square relation TH + HT + H
    reduces to zero.
    """
    if n < 1:
        raise ValueError("heredity needs presentations for n and n+1")
    target = signature(n + 1)
    wb = weight_bound if weight_bound is not None else \
        required_weight_bound(target, 4 * target.n)
    rs = complete(orient(target), wb)
    items = []
    if target.parity_class is EVEN:
        residue = normal_form(poly("TH", "HT", "H"), rs)
        items.append(CheckItem(
            name="TH + HT + H = 0",
            passed=residue == ZERO,
            detail="" if residue == ZERO else f"residue {sorted(residue)}"))
    else:
        for name, words in (
                ("H^2SYH = H^3SY + H^2Y", ("HHSYH", "HHHSY", "HHY")),
                ("HYH^2S = H^3SY", ("HYHHS", "HHHSY"))):
            residue = normal_form(poly(*words), rs)
            items.append(CheckItem(
                name=name,
                passed=residue == ZERO,
                detail="" if residue == ZERO else f"residue {sorted(residue)}"))
    return CheckReport(title=f"inclusion transport (n={n} into n={n + 1})",
                       items=tuple(items))


@dataclass(frozen=True)
class ComparisonReport:
    degree_bound: int
    cell_mismatches: tuple[tuple[int, int, int, int], ...]
    total_mismatches: tuple[tuple[int, int, int], ...]

    @property
    def is_match(self) -> bool:
        return not self.cell_mismatches and not self.total_mismatches

    @property
    def first_total_mismatch(self) -> Optional[tuple[int, int, int]]:
        return self.total_mismatches[0] if self.total_mismatches else None

    def lines(self) -> list[str]:
        if self.is_match:
            return [f"dimension tables agree up to degree {self.degree_bound}"]
        out = [f"dimension tables disagree (bound {self.degree_bound}):"]
        for d, a, h in self.total_mismatches:
            out.append(f"  degree {d}: presentation {a} vs homology {h}")
        for d, l, a, h in self.cell_mismatches:
            out.append(f"  cell (degree {d}, level {l}): {a} vs {h}")
        return out


def compare(alg: BigradedDimTable, hom: BigradedDimTable) -> ComparisonReport:
    """Cell-by-cell and per-degree comparison of two dimension tables."""
    if alg.degree_bound != hom.degree_bound:
        raise ValueError(
            f"degree bounds differ: {alg.degree_bound} vs {hom.degree_bound}")
    a, h = alg.as_dict(), hom.as_dict()
    cells = []
    for key in sorted(set(a) | set(h)):
        if a.get(key, 0) != h.get(key, 0):
            d, l = key
            cells.append((d, l, a.get(key, 0), h.get(key, 0)))
    totals = []
    for d in range(alg.degree_bound + 1):
        ta, th = alg.degree_total(d), hom.degree_total(d)
        if ta != th:
            totals.append((d, ta, th))
    return ComparisonReport(degree_bound=alg.degree_bound,
                            cell_mismatches=tuple(cells),
                            total_mismatches=tuple(totals))


# ---------------------------------------------------------------------------
# Repair search


@dataclass(frozen=True)
class Augmentation:
    rules: tuple[RewriteRule, ...]
    system: RewriteSystem = field(compare=False)

    def render(self) -> str:
        return "{" + ", ".join(r.render() for r in self.rules) + "}"


def _words_in_cell(rs: RewriteSystem, degree: int, level: int) -> list[Word]:
    out = [w for w in irreducible_words(rs, rs.weight_bound)
           if unshifted_degree(w, rs.sig) == degree and word_level(w) == level]
    return sorted(out, key=rs.order.sort_key)


def _candidate_rhs_pool(rs: RewriteSystem, lhs: Word) -> list[Word]:
    """Irreducible words of equal degree, level at most level(lhs), and
    strictly below lhs in the order."""
    deg = word_degree(lhs, rs.sig)
    lv = word_level(lhs)
    pool = [w for w in irreducible_words(rs, rs.order.weight(lhs))
            if w != lhs
            and word_degree(w, rs.sig) == deg
            and word_level(w) <= lv
            and rs.order.less(w, lhs)]
    return sorted(pool, key=rs.order.sort_key)


def repair_search(sig: Signature, hom: BigradedDimTable, degree_bound: int,
                  weight_bound: Optional[int] = None) -> tuple[Augmentation, ...]:
    """Search for rule augmentations that reconcile the presentation
    with the target dimension table.

    Surplus cells are attacked in increasing (degree, level) order; for
    each candidate left side in the first surplus cell every F2
    combination of equal-degree, level-compatible, smaller irreducible
    words is tried as a right side.  Completion then runs on the
    enlarged system, and any derived rules it is forced to add become
    part of the candidate augmentation.  A candidate survives only if

      (i)   re-running completion on the base rules plus the candidate
            set adds no further rules and rewrites none,
      (ii)  the level filtration is preserved, and
      (iii) the dimension table matches the target exactly up to
            degree_bound.

    Distinct search paths reaching the same rule set are reported once.
    RepairError is raised when no candidate survives.
    """
    wb = weight_bound if weight_bound is not None else \
        required_weight_bound(sig, degree_bound)
    base = complete(orient(sig), wb)
    if compare(hilbert(base, degree_bound), hom).is_match:
        raise ValueError("presentation already matches; nothing to repair")
    base_set = set(base.rules)

    survivors: list[Augmentation] = []
    seen: set = set()
    dead_degrees: list[int] = []

    def verify(candidate: tuple[RewriteRule, ...]) -> Optional[RewriteSystem]:
        start = tuple(sorted(base.rules + candidate,
                             key=lambda r: base.order.sort_key(r.lhs)))
        try:
            done = complete(RewriteSystem(sig=sig, order=base.order,
                                          rules=start), wb)
        except RuntimeError:
            return None
        if done.rules != start:
            return None
        if not filtration_check(done).passed:
            return None
        if not compare(hilbert(done, degree_bound), hom).is_match:
            return None
        return done

    def search(current: RewriteSystem, depth: int) -> None:
        alg = hilbert(current, degree_bound).as_dict()
        homd = hom.as_dict()
        keys = set(alg) | set(homd)
        deficit = [k for k in keys if alg.get(k, 0) < homd.get(k, 0)]
        surplus = sorted(k for k in keys if alg.get(k, 0) > homd.get(k, 0))
        if deficit:
            dead_degrees.append(min(d for d, _ in deficit))
            return
        if not surplus:
            if not base_set <= set(current.rules):
                return
            candidate = tuple(r for r in current.rules if r not in base_set)
            key = frozenset(candidate)
            if key in seen:
                return
            seen.add(key)
            done = verify(candidate)
            if done is not None:
                survivors.append(Augmentation(rules=candidate, system=done))
            return
        if depth >= 8:
            dead_degrees.append(surplus[0][0])
            return
        degree, level = surplus[0]
        progressed = False
        for lhs in _words_in_cell(current, degree, level):
            pool = _candidate_rhs_pool(current, lhs)
            if len(pool) > 10:
                pool = pool[:10]
            for size in range(len(pool) + 1):
                for combo in itertools.combinations(pool, size):
                    rule = RewriteRule(lhs, frozenset(combo))
                    enlarged = RewriteSystem(
                        sig=sig, order=current.order,
                        rules=current.rules + (rule,))
                    try:
                        nxt = complete(enlarged, wb)
                    except RuntimeError:
                        continue
                    progressed = True
                    search(nxt, depth + 1)
        if not progressed:
            dead_degrees.append(degree)

    search(base, 0)
    if not survivors:
        first = min(dead_degrees) if dead_degrees else 0
        raise RepairError(
            f"no confluent, filtration-compatible augmentation matches the "
            f"table; first unrepairable degree: {first}")
    survivors.sort(key=lambda a: tuple(r.render() for r in a.rules))
    return tuple(survivors)
