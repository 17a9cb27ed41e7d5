"""Oracle-interactive procedures for the u-query model.

The central routine is a deterministic certificate-guided solver that
evaluates the hazard-free extension of a known function on an unknown
input revealed one queried position at a time.  It runs two stages:
the first repeatedly queries a minimum 0-certificate of the least
0-valued input consistent with the answers so far, for as long as one
exists, and the second does the same with 1-certificates of consistent
1-valued inputs.  A stage exits the moment the recorded answers force
a value, and control reaches the answer u only once no 0-valued and no
1-valued input remains consistent, which is what makes that answer
sound.  Every round reveals at least one new position, and the total
number of distinct queries stays within bs_1 * C_0 + bs_0 * C_1.

Also here: the doubled-tree simulation for monotone (and, with an
orientation, unate) functions, the downward-closure wrapper that turns
a u-model solver into a classical one, and the reduction computing OR
on 2**n bits through any u-model solver for the indexing function.

Oracles count distinct queried positions; repeats are served from a
cache and are free.  Wrappers make at most one inner query per outer
query, so query-count bounds transfer across reductions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Protocol, Sequence

from .core import (
    STAR,
    UNKNOWN,
    BooleanFunction,
    HazardFreeTable,
    TernaryString,
    as_ternary,
    is_monotone,
    Orientation,
)
from .measures import block_summary, certificate_summary, certificate_u_at
from .trees import DecisionTree, Node


class QueryOracle(Protocol):
    @property
    def arity(self) -> int: ...
    def query(self, var: int) -> int: ...


Solver = Callable[[QueryOracle], int]


class Oracle:
    """Answers queries about a hidden ternary string.

    ``query`` takes a 1-based variable index.  The transcript records
    first-time queries in order; repeats hit the cache and do not count.
    """

    def __init__(self, hidden: TernaryString | str):
        self._hidden = as_ternary(hidden)
        self._answers: dict[int, int] = {}
        self._log: list[tuple[int, int]] = []

    @property
    def arity(self) -> int:
        return len(self._hidden)

    @property
    def hidden(self) -> TernaryString:
        return self._hidden

    def query(self, var: int) -> int:
        if not 1 <= var <= self.arity:
            raise ValueError(f"query index {var} outside 1..{self.arity}")
        if var not in self._answers:
            answer = self._hidden[var - 1]
            self._answers[var] = answer
            self._log.append((var, answer))
        return self._answers[var]

    @property
    def query_count(self) -> int:
        return len(self._answers)

    @property
    def transcript(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._log)


class WrappedOracle:
    """An oracle derived from another by a per-query rewrite rule.

    ``rewrite(var, inner)`` produces the answer and may call
    ``inner.query`` at most once; this keeps every outer query bound
    to at most one inner query.  Outer repeats are cached here, so the
    inner oracle is consulted at most once per distinct outer index.
    """

    def __init__(self, arity: int, inner: QueryOracle,
                 rewrite: Callable[[int, QueryOracle], int]):
        self._arity = arity
        self._inner = inner
        self._rewrite = rewrite
        self._answers: dict[int, int] = {}
        self._log: list[tuple[int, int]] = []

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def inner(self) -> QueryOracle:
        return self._inner

    def query(self, var: int) -> int:
        if not 1 <= var <= self._arity:
            raise ValueError(f"query index {var} outside 1..{self._arity}")
        if var not in self._answers:
            answer = self._rewrite(var, self._inner)
            self._answers[var] = answer
            self._log.append((var, answer))
        return self._answers[var]

    @property
    def query_count(self) -> int:
        return len(self._answers)

    @property
    def transcript(self) -> tuple[tuple[int, int], ...]:
        return tuple(self._log)


def fill_unknown_oracle(inner: QueryOracle, fill: Sequence[int]) -> WrappedOracle:
    """Substitute fill[var-1] for every u answer of the inner oracle."""
    fill = tuple(fill)

    def rewrite(var: int, o: QueryOracle) -> int:
        a = o.query(var)
        return fill[var - 1] if a == UNKNOWN else a

    return WrappedOracle(len(fill), inner, rewrite)


def mask_ones_oracle(inner: QueryOracle) -> WrappedOracle:
    """Downward-closure wrapper over a resolved oracle: 0 -> 0, 1 -> u."""

    def rewrite(var: int, o: QueryOracle) -> int:
        return UNKNOWN if o.query(var) == 1 else 0

    return WrappedOracle(inner.arity, inner, rewrite)


def indexing_oracle_from_or(or_oracle: QueryOracle, n: int) -> WrappedOracle:
    """Present an OR oracle on 2**n bits as an indexing-function input.

    The n addressing variables answer u without consulting the inner
    oracle; target variable n+k answers the k-th OR bit.
    """
    targets = or_oracle.arity
    if targets != 1 << n:
        raise ValueError(f"inner oracle has {targets} bits, expected {1 << n}")

    def rewrite(var: int, o: QueryOracle) -> int:
        if var <= n:
            return UNKNOWN
        return o.query(var - n)

    return WrappedOracle(n + targets, or_oracle, rewrite)


def transcript_json(transcript: Sequence[tuple[int, int]]) -> list[dict]:
    return [{"i": var, "a": "01u"[answer]} for var, answer in transcript]


def tree_solver(tree: DecisionTree) -> Solver:
    """Turn a decision tree into a solver that walks it against an oracle."""

    def run(oracle: QueryOracle) -> int:
        node = tree
        while isinstance(node, Node):
            answer = oracle.query(node.var)
            if answer == UNKNOWN:
                if node.onU is None:
                    raise ValueError("classical tree received a u answer")
                node = node.onU
            else:
                node = (node.on0, node.on1)[answer]
        return node.value

    return run


# ---------------------------------------------------------------------------
# The certificate-guided solver.


@dataclass(frozen=True)
class SolveResult:
    output: int
    queries: int
    bound: int
    transcript: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {"output": "01u"[self.output], "queries": self.queries,
                "bound": self.bound}


@dataclass(frozen=True)
class ClaimsReport:
    """Instrumented run: the final-state emptiness claims, checked.

    A run may answer u only after abandoning both binary answers, so at
    fall-through no 1-valued input may remain consistent with the
    recorded answers (claim 1) and no 0-valued input either (claim 2).
    Both are rechecked there from the oracle transcript alone; a
    violation carries the offending input.  Runs that exit with 0 or 1
    leave the claims unchecked (None).
    """

    output: int
    expected: int
    queries: int
    bound: int
    phase2_entered: bool
    fallthrough: bool
    claim1_holds: bool | None
    claim2_holds: bool | None
    counterexample: TernaryString | None

    @property
    def correct(self) -> bool:
        return self.output == self.expected

    @property
    def claims_hold(self) -> bool:
        return self.claim1_holds in (None, True) and self.claim2_holds in (None, True)


class _Watch:
    __slots__ = ("phase2_entered", "fallthrough", "claim1", "claim2", "culprit")

    def __init__(self):
        self.phase2_entered = False
        self.fallthrough = False
        self.claim1 = None
        self.claim2 = None
        self.culprit = None


@lru_cache(maxsize=4096)
def _cost_budget(table: HazardFreeTable) -> int:
    # Worst case for the solver: bs_1 rounds of 0-certificates, then
    # bs_0 rounds of 1-certificates.  Cached so that sweeping many
    # hidden inputs of one function prices the budget only once.
    blocks = block_summary(table)
    certs = certificate_summary(table)
    return blocks.by_value[1] * certs.c_u_0 + blocks.by_value[0] * certs.c_u_1


def _run_algorithm1(table: HazardFreeTable, oracle: QueryOracle,
                    watch: _Watch | None) -> SolveResult:
    f = table.function
    n = table.arity
    if oracle.arity != n:
        raise ValueError(f"oracle arity {oracle.arity} != function arity {n}")
    if f.is_constant():
        return SolveResult(f.value_at_index(0), oracle.query_count, 0,
                           tuple(oracle.transcript))

    bound = _cost_budget(table)

    vals = table.values
    pw3 = tuple(3 ** (n - 1 - p) for p in range(n))
    digit_cache = [TernaryString.from_code(c, n).trits for c in range(3 ** n)]
    cells = [STAR] * n

    def consistent_input(want: int) -> int | None:
        """Lex-least input of the wanted value consistent with the answers."""
        for code in range(3 ** n):
            if vals[code] != want:
                continue
            digits = digit_cache[code]
            if all(cells[p] == STAR or cells[p] == digits[p] for p in range(n)):
                return code
        return None

    def forces(b: int) -> bool:
        # The answers force value b iff the coarsest consistent string
        # (u at every unqueried position) already evaluates to b.
        code = 0
        for p in range(n):
            c = cells[p]
            code += (UNKNOWN if c == STAR else c) * pw3[p]
        return vals[code] == b

    def result(output: int) -> SolveResult:
        return SolveResult(output, oracle.query_count, bound,
                           tuple(oracle.transcript))

    # Each stage drains one value class: a round picks the least
    # consistent input of the stage value and queries the whole domain
    # of a minimum certificate at it.  A round whose certificate lies
    # inside already-answered positions cannot occur (the previous
    # forces check would have exited), so every round makes progress.
    for stage_value in (0, 1):
        if watch is not None and stage_value == 1:
            watch.phase2_entered = True
        while True:
            code = consistent_input(stage_value)
            if code is None:
                break
            cert = certificate_u_at(table, TernaryString(digit_cache[code]))
            for var in sorted(cert.assignment.domain()):
                cells[var - 1] = oracle.query(var)
            if forces(0):
                return result(0)
            if forces(1):
                return result(1)

    if watch is not None:
        watch.fallthrough = True
        answered = {var - 1: a for var, a in oracle.transcript}

        def survivor(want: int) -> int | None:
            # Recheck from the transcript alone, independently of cells.
            for code in range(3 ** n):
                if vals[code] != want:
                    continue
                digits = digit_cache[code]
                if all(digits[p] == a for p, a in answered.items()):
                    return code
            return None

        bad1 = survivor(1)
        bad0 = survivor(0)
        watch.claim1 = bad1 is None
        watch.claim2 = bad1 is None and bad0 is None
        bad = bad1 if bad1 is not None else bad0
        if bad is not None:
            watch.culprit = TernaryString.from_code(bad, n)
    return result(UNKNOWN)


def algorithm1_solve(table: HazardFreeTable, oracle: QueryOracle) -> SolveResult:
    """Evaluate the extension of a known function on an oracle-held input.

    Rounds of minimum-certificate queries run at consistent 0-valued
    inputs while any exists, then at consistent 1-valued inputs; each
    round exits early when the answers force a value, and u is returned
    only once neither class has a consistent member.  Constant functions
    are answered immediately with zero queries.  For all others the
    result's ``queries`` never exceeds its ``bound``.
    """
    return _run_algorithm1(table, oracle, None)


def certificate_solver(table: HazardFreeTable) -> Solver:
    def run(oracle: QueryOracle) -> int:
        return _run_algorithm1(table, oracle, None).output
    return run


def instrumented_claims_check(table: HazardFreeTable,
                              hidden: TernaryString | str) -> ClaimsReport:
    """Run the solver on one hidden input with the final-state claims checked."""
    hidden = as_ternary(hidden)
    oracle = Oracle(hidden)
    watch = _Watch()
    res = _run_algorithm1(table, oracle, watch)
    return ClaimsReport(
        output=res.output,
        expected=table.values[hidden.code()],
        queries=res.queries,
        bound=res.bound,
        phase2_entered=watch.phase2_entered,
        fallthrough=watch.fallthrough,
        claim1_holds=watch.claim1,
        claim2_holds=watch.claim2,
        counterexample=watch.culprit,
    )


# ---------------------------------------------------------------------------
# Simulations and reductions.


def monotone_simulate(f: BooleanFunction, tree: DecisionTree,
                      oracle: QueryOracle) -> int:
    """Evaluate the extension of a monotone f with a classical tree, twice.

    Pass one resolves every u answer to 0, pass two to 1.  Monotonicity
    makes the pair of resolved values bracket the true one: 1 on the
    all-zeros resolution forces 1, 0 on the all-ones resolution forces
    0, and the remaining case is exactly the unresolved value u.  Both
    passes share the oracle, so at most 2 * depth distinct queries.
    """
    if not is_monotone(f):
        raise ValueError("monotone_simulate requires a monotone function")
    run = tree_solver(tree)
    low = run(fill_unknown_oracle(oracle, (0,) * f.arity))
    high = run(fill_unknown_oracle(oracle, (1,) * f.arity))
    if low == 1:
        return 1
    if high == 0:
        return 0
    return UNKNOWN


def unate_simulate(f: BooleanFunction, orientation: Orientation,
                   tree: DecisionTree, oracle: QueryOracle) -> int:
    """Monotone simulation transported along a per-variable complementation.

    ``orientation`` must make x -> f(x xor s) monotone; pass one then
    resolves u at variable i to s_i, pass two to 1 - s_i.
    """
    n = f.arity
    if len(orientation.bits) != n:
        raise ValueError("orientation length differs from arity")
    shift = 0
    for b in orientation.bits:
        shift = shift * 2 + b
    shifted_bits = 0
    for idx in range(1 << n):
        shifted_bits |= f.value_at_index(idx ^ shift) << idx
    if not is_monotone(BooleanFunction(n, shifted_bits)):
        raise ValueError("orientation does not make the function monotone")
    run = tree_solver(tree)
    low = run(fill_unknown_oracle(oracle, orientation.bits))
    high = run(fill_unknown_oracle(oracle, tuple(1 - b for b in orientation.bits)))
    if low == 1:
        return 1
    if high == 0:
        return 0
    return UNKNOWN


def downward_closure_solve(f: BooleanFunction, u_solver: Solver,
                           binary_oracle: QueryOracle) -> int:
    """Compute the downward closure of f on a resolved input.

    The wrapper hides every 1 answer behind u; on such inputs the
    extension of f is 0 exactly when the closure is 0, so the solver's
    0 maps to 0 and both other outputs map to 1.  One inner query per
    outer query: the closure costs no more queries than the u-model.
    """
    if binary_oracle.arity != f.arity:
        raise ValueError("oracle arity differs from function arity")
    out = u_solver(mask_ones_oracle(binary_oracle))
    return 0 if out == 0 else 1


def or_via_ind_reduction(n: int, ind_solver: Solver,
                         or_oracle: QueryOracle) -> int:
    """Compute OR on 2**n bits through a u-model indexing-function solver.

    Addressing variables answer u, target k answers the k-th OR bit; the
    indexing extension is 0 exactly when every OR bit is 0, so output 0
    maps to 0 and anything else to 1.  Any correct indexing solver is
    therefore forced to pay the classical OR cost on some input.
    """
    out = ind_solver(indexing_oracle_from_or(or_oracle, n))
    return 0 if out == 0 else 1
