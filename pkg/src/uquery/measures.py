"""Combinatorial complexity measures of hazard-free extensions.

For an extension F = f_u and an input x over {0, 1, u}:

* a block B of variables is sensitive at x when some y agreeing with x
  outside B has F(y) != F(x);
* the block sensitivity at x is the maximum number of pairwise disjoint
  sensitive blocks, and sensitivity counts the singleton ones;
* a certificate at x is a partial assignment consistent with x such that
  every consistent string gets the same value F(x); its size is the
  number of assigned positions.

Aggregates split by output value: bs_u restricted to inputs of value b,
certificate complexity C_u = max over the 0- and 1-valued inputs (the
u-valued inputs are tracked separately).  The classical measures s, bs
and C of f itself are included for comparison.

Packing is exact: any disjoint family of sensitive blocks can be shrunk
member-wise to minimal sensitive blocks without losing disjointness, so
a maximum packing over the minimal blocks is a maximum packing overall.

Everything here is pure and operates on immutable tables, so per-input
loops can be distributed freely (the verification harness does).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from . import trees
from .core import (
    STAR,
    UNKNOWN,
    BooleanFunction,
    HazardFreeTable,
    PartialAssignment,
    TernaryString,
    as_ternary,
    hazard_free_table,
)


def _weights(n: int) -> tuple[int, ...]:
    """Base-3 weight of each position (variable 1 most significant)."""
    return tuple(3 ** (n - 1 - p) for p in range(n))


@dataclass(frozen=True)
class SensitiveBlockWitness:
    """A sensitive block together with the altered input exhibiting it."""

    base: TernaryString
    block: frozenset[int]      # variable indices, 1-based
    altered: TernaryString


@dataclass(frozen=True)
class CertificateWitness:
    """A certificate: consistent strings all evaluate to ``value``."""

    assignment: PartialAssignment
    value: int

    @property
    def size(self) -> int:
        return self.assignment.size


@dataclass(frozen=True)
class BlockSensitivitySummary:
    bs_u: int
    by_value: tuple[int, int, int]  # indexed by output trit 0, 1, u
    attaining: tuple[TernaryString | None, ...]
    families: tuple[tuple[SensitiveBlockWitness, ...], ...]
    attaining_global: TernaryString
    family_global: tuple[SensitiveBlockWitness, ...]


@dataclass(frozen=True)
class CertificateSummary:
    c_u: int
    c_u_0: int
    c_u_1: int
    c_u_uval: int
    attaining: tuple[TernaryString | None, ...]
    witnesses: tuple[CertificateWitness | None, ...]


@dataclass(frozen=True)
class StandardMeasures:
    s: int
    bs: int
    c: int
    s_attaining: TernaryString
    s_variable: int | None
    bs_attaining: TernaryString
    bs_family: tuple[SensitiveBlockWitness, ...]
    c_attaining: TernaryString
    c_witness: CertificateWitness


# ---------------------------------------------------------------------------
# Sensitivity.


def sensitivity_u_at(table: HazardFreeTable, x: TernaryString | str) -> int:
    """Number of variables whose singleton block is sensitive at x."""
    x = as_ternary(x)
    n = table.arity
    if len(x) != n:
        raise ValueError(f"input length {len(x)} != arity {n}")
    vals, pw = table.values, _weights(n)
    base, v = x.code(), table.values[x.code()]
    count = 0
    for p in range(n):
        if _position_sensitive(vals, x.trits, base, pw, p, v):
            count += 1
    return count


def _position_sensitive(vals, digits, base, pw, p, v) -> bool:
    # For a 0/1-valued input the u-setting is the coarsest change and is
    # off-value iff some change is; for a u-valued input only resolved
    # settings can leave u.
    if v != UNKNOWN:
        return vals[base + (UNKNOWN - digits[p]) * pw[p]] != v
    for t in (0, 1):
        if t != digits[p] and vals[base + (t - digits[p]) * pw[p]] != v:
            return True
    return False


def sensitivity_u(table: HazardFreeTable) -> int:
    return _sensitivity_scan(table)[0]


def _sensitivity_scan(table: HazardFreeTable):
    n = table.arity
    vals, pw = table.values, _weights(n)
    best, best_code, best_var = 0, 0, None
    for base in range(3 ** n):
        digits = TernaryString.from_code(base, n).trits
        v = vals[base]
        count, first = 0, None
        for p in range(n):
            if _position_sensitive(vals, digits, base, pw, p, v):
                count += 1
                if first is None:
                    first = p + 1
        if count > best:
            best, best_code, best_var = count, base, first
    return best, TernaryString.from_code(best_code, n), best_var


# ---------------------------------------------------------------------------
# Sensitive blocks and block sensitivity.


def _block_sensitive(vals, digits, base, pw, blk, v) -> bool:
    if v != UNKNOWN:
        code = base
        for p in blk:
            code += (UNKNOWN - digits[p]) * pw[p]
        return vals[code] != v
    for w in product((0, 1), repeat=len(blk)):
        code = base
        for k, p in enumerate(blk):
            code += (w[k] - digits[p]) * pw[p]
        if vals[code] != UNKNOWN:
            return True
    return False


def _lex_least_alteration(vals, digits, base, pw, blk, v) -> int:
    """Code of the smallest altered string proving the block sensitive."""
    for tv in product((0, 1, 2), repeat=len(blk)):
        code = base
        for k, p in enumerate(blk):
            code += (tv[k] - digits[p]) * pw[p]
        if vals[code] != v:
            return code
    raise AssertionError("block reported sensitive but no alteration found")


def _minimal_blocks(vals, n, digits, base, pw) -> list[tuple[int, ...]]:
    v = vals[base]
    found: list[tuple[int, ...]] = []
    masks: list[int] = []
    for size in range(1, n + 1):
        for blk in combinations(range(n), size):
            bm = 0
            for p in blk:
                bm |= 1 << p
            # supersets of a sensitive block are never minimal; every
            # strict subset of a survivor was already tested insensitive
            if any(bm & fm == fm for fm in masks):
                continue
            if _block_sensitive(vals, digits, base, pw, blk, v):
                found.append(blk)
                masks.append(bm)
    return found


def minimal_sensitive_blocks(
    table: HazardFreeTable, x: TernaryString | str
) -> list[SensitiveBlockWitness]:
    """All minimal sensitive blocks at x, ordered by size then position."""
    x = as_ternary(x)
    n = table.arity
    if len(x) != n:
        raise ValueError(f"input length {len(x)} != arity {n}")
    vals, pw = table.values, _weights(n)
    base, v = x.code(), table.values[x.code()]
    out = []
    for blk in _minimal_blocks(vals, n, x.trits, base, pw):
        altered = _lex_least_alteration(vals, x.trits, base, pw, blk, v)
        out.append(
            SensitiveBlockWitness(
                base=x,
                block=frozenset(p + 1 for p in blk),
                altered=TernaryString.from_code(altered, n),
            )
        )
    return out


def _max_disjoint(blocks: list[tuple[int, ...]]) -> list[int]:
    """Indices of a maximum disjoint subfamily (exact branch and bound)."""
    masks = []
    for blk in blocks:
        bm = 0
        for p in blk:
            bm |= 1 << p
        masks.append(bm)
    best: list[int] = []
    chosen: list[int] = []

    def dfs(start: int, used: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        for j in range(start, len(blocks)):
            if len(chosen) + len(blocks) - j <= len(best):
                break
            if masks[j] & used:
                continue
            chosen.append(j)
            dfs(j + 1, used | masks[j])
            chosen.pop()

    dfs(0, 0)
    return best


def block_sensitivity_u_at(
    table: HazardFreeTable, x: TernaryString | str
) -> tuple[int, tuple[SensitiveBlockWitness, ...]]:
    """Maximum number of disjoint sensitive blocks at x, with a witness family."""
    x = as_ternary(x)
    witnesses = minimal_sensitive_blocks(table, x)
    blocks = [tuple(sorted(v - 1 for v in w.block)) for w in witnesses]
    picked = _max_disjoint(blocks)
    return len(picked), tuple(witnesses[j] for j in picked)


def block_summary(table: HazardFreeTable) -> BlockSensitivitySummary:
    """Block sensitivity over all inputs and split by output value."""
    n = table.arity
    vals, pw = table.values, _weights(n)
    by_value = [0, 0, 0]
    attaining: list[TernaryString | None] = [None, None, None]
    families: list[tuple[SensitiveBlockWitness, ...]] = [(), (), ()]
    best, best_x, best_family = -1, None, ()
    for base in range(3 ** n):
        x = TernaryString.from_code(base, n)
        v = vals[base]
        blocks = _minimal_blocks(vals, n, x.trits, base, pw)
        picked = _max_disjoint(blocks)
        count = len(picked)
        family = tuple(
            SensitiveBlockWitness(
                base=x,
                block=frozenset(p + 1 for p in blocks[j]),
                altered=TernaryString.from_code(
                    _lex_least_alteration(vals, x.trits, base, pw, blocks[j], v), n
                ),
            )
            for j in picked
        )
        if attaining[v] is None or count > by_value[v]:
            by_value[v] = count
            attaining[v], families[v] = x, family
        if count > best:
            best, best_x, best_family = count, x, family
    return BlockSensitivitySummary(
        bs_u=best,
        by_value=tuple(by_value),
        attaining=tuple(attaining),
        families=tuple(families),
        attaining_global=best_x,
        family_global=best_family,
    )


def block_sensitivity_u(table: HazardFreeTable) -> int:
    return block_summary(table).bs_u


def block_sensitivity_u_value(table: HazardFreeTable, value: int) -> int:
    """bs restricted to inputs of the given output trit; 0 when none exist."""
    if value not in (0, 1, 2):
        raise ValueError("value must be a trit")
    return block_summary(table).by_value[value]


# ---------------------------------------------------------------------------
# Certificates.


def certificate_u_at(
    table: HazardFreeTable, x: TernaryString | str
) -> CertificateWitness:
    """A minimum certificate at x; domain chosen smallest, then lex-least.

    For 0/1-valued inputs it suffices to search subsets of the resolved
    positions of x (a u cell can always be dropped from a certificate)
    and to test a candidate domain S with the single lookup of x with
    everything outside S coarsened to u.  For u-valued inputs candidate
    domains range over all positions and acceptance checks completions
    that are binary outside S; unresolved completions only coarsen.
    """
    x = as_ternary(x)
    n = table.arity
    if len(x) != n:
        raise ValueError(f"input length {len(x)} != arity {n}")
    vals, pw = table.values, _weights(n)
    digits = x.trits
    base, v = x.code(), table.values[x.code()]
    all_u = 3 ** n - 1

    if v != UNKNOWN:
        positions = [p for p in range(n) if digits[p] != UNKNOWN]
        for size in range(len(positions) + 1):
            for S in combinations(positions, size):
                code = all_u
                for p in S:
                    code += (digits[p] - UNKNOWN) * pw[p]
                if vals[code] == v:
                    return CertificateWitness(
                        PartialAssignment.restriction(x, (p + 1 for p in S)), v
                    )
        raise AssertionError("the input itself certifies its value")

    for size in range(n + 1):
        for S in combinations(range(n), size):
            rest = [p for p in range(n) if p not in S]
            fixed = sum(digits[p] * pw[p] for p in S)
            ok = True
            for w in product((0, 1), repeat=len(rest)):
                code = fixed
                for k, p in enumerate(rest):
                    code += w[k] * pw[p]
                if vals[code] != UNKNOWN:
                    ok = False
                    break
            if ok:
                return CertificateWitness(
                    PartialAssignment.restriction(x, (p + 1 for p in S)), v
                )
    raise AssertionError("the input itself certifies its value")


def certificate_summary(table: HazardFreeTable) -> CertificateSummary:
    n = table.arity
    vals = table.values
    worst = [0, 0, 0]
    attaining: list[TernaryString | None] = [None, None, None]
    witnesses: list[CertificateWitness | None] = [None, None, None]
    for base in range(3 ** n):
        v = vals[base]
        x = TernaryString.from_code(base, n)
        w = certificate_u_at(table, x)
        if attaining[v] is None or w.size > worst[v]:
            worst[v] = w.size
            attaining[v], witnesses[v] = x, w
    return CertificateSummary(
        c_u=max(worst[0], worst[1]),
        c_u_0=worst[0],
        c_u_1=worst[1],
        c_u_uval=worst[2],
        attaining=tuple(attaining),
        witnesses=tuple(witnesses),
    )


def certificate_complexity_u(table: HazardFreeTable) -> int:
    """C_u: worst-case minimum certificate size over the 0/1-valued inputs."""
    return certificate_summary(table).c_u


# ---------------------------------------------------------------------------
# Classical measures of the underlying Boolean function.


def standard_measures(
    f: BooleanFunction, table: HazardFreeTable | None = None
) -> StandardMeasures:
    """Classical s, bs and C of f over binary inputs with bit-flip blocks."""
    n = f.arity
    if table is None:
        table = hazard_free_table(f)
    vals, pw = table.values, _weights(n)

    s_best, s_x, s_var = 0, 0, None
    bs_best, bs_x, bs_family = -1, 0, ()
    c_best, c_x, c_wit = -1, 0, None
    for idx in range(1 << n):
        fv = f.value_at_index(idx)
        digits = tuple((idx >> (n - 1 - p)) & 1 for p in range(n))

        flips = [p for p in range(n) if f.value_at_index(idx ^ (1 << (n - 1 - p))) != fv]
        if len(flips) > s_best:
            s_best, s_x, s_var = len(flips), idx, flips[0] + 1

        blocks = _classical_minimal_blocks(f, n, idx, fv)
        picked = _max_disjoint(blocks)
        if len(picked) > bs_best:
            base_str = TernaryString(digits)
            bs_best, bs_x = len(picked), idx
            bs_family = tuple(
                SensitiveBlockWitness(
                    base=base_str,
                    block=frozenset(p + 1 for p in blocks[j]),
                    altered=TernaryString(
                        tuple(
                            digits[p] ^ 1 if p in blocks[j] else digits[p]
                            for p in range(n)
                        )
                    ),
                )
                for j in picked
            )

        wit = _classical_certificate(vals, pw, n, digits, fv)
        if wit.size > c_best:
            c_best, c_x, c_wit = wit.size, idx, wit

    def _as_string(idx: int) -> TernaryString:
        return TernaryString(tuple((idx >> (n - 1 - p)) & 1 for p in range(n)))

    return StandardMeasures(
        s=s_best,
        bs=bs_best,
        c=c_best,
        s_attaining=_as_string(s_x),
        s_variable=s_var,
        bs_attaining=_as_string(bs_x),
        bs_family=bs_family,
        c_attaining=_as_string(c_x),
        c_witness=c_wit,
    )


def _classical_minimal_blocks(f, n, idx, fv) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    masks: list[int] = []
    for size in range(1, n + 1):
        for blk in combinations(range(n), size):
            bm = 0
            flip = 0
            for p in blk:
                bm |= 1 << p
                flip |= 1 << (n - 1 - p)
            if any(bm & fm == fm for fm in masks):
                continue
            if f.value_at_index(idx ^ flip) != fv:
                found.append(blk)
                masks.append(bm)
    return found


def _classical_certificate(vals, pw, n, digits, fv) -> CertificateWitness:
    # f is constant on the subcube fixing S iff the extension maps the
    # string with u off S to that constant.
    all_u = 3 ** n - 1
    for size in range(n + 1):
        for S in combinations(range(n), size):
            code = all_u
            for p in S:
                code += (digits[p] - UNKNOWN) * pw[p]
            if vals[code] == fv:
                cells = tuple(digits[p] if p in S else STAR for p in range(n))
                return CertificateWitness(PartialAssignment(cells), fv)
    raise AssertionError("fixing every position certifies the value")


# ---------------------------------------------------------------------------
# Witness validation by the definitional quantifiers (used by the harness).


def validate_certificate(table: HazardFreeTable, witness: CertificateWitness) -> bool:
    """Check a certificate by enumerating every consistent ternary string."""
    n = table.arity
    cells = witness.assignment.cells
    if len(cells) != n:
        return False
    free = [p for p in range(n) if cells[p] == STAR]
    for fill in product((0, 1, 2), repeat=len(free)):
        y = list(cells)
        for k, p in enumerate(free):
            y[p] = fill[k]
        if table.values[TernaryString(tuple(y)).code()] != witness.value:
            return False
    return True


def validate_block_family(
    table: HazardFreeTable,
    base: TernaryString | str,
    family: tuple[SensitiveBlockWitness, ...],
) -> bool:
    """Disjointness plus, per block, the altered string proving sensitivity."""
    base = as_ternary(base)
    n = table.arity
    v = table.values[base.code()]
    used: set[int] = set()
    for w in family:
        if w.base != base or not w.block or not all(1 <= i <= n for i in w.block):
            return False
        if used & w.block:
            return False
        used |= w.block
        if len(w.altered) != n:
            return False
        for p in range(n):
            if (p + 1) not in w.block and w.altered[p] != base[p]:
                return False
        if table.values[w.altered.code()] == v:
            return False
    return True


# ---------------------------------------------------------------------------
# The combined report.


_REPORT_FIELDS = (
    "s_u", "bs_u", "bs_u_0", "bs_u_1", "bs_u_uval",
    "C_u_0", "C_u_1", "C_u", "C_u_uval",
    "s", "bs", "C", "D", "D_u",
)


@dataclass(frozen=True)
class MeasureReport:
    """All measures of one function, with optional serializable witnesses."""

    s_u: int
    bs_u: int
    bs_u_0: int
    bs_u_1: int
    bs_u_uval: int
    C_u_0: int
    C_u_1: int
    C_u: int
    C_u_uval: int
    s: int
    bs: int
    C: int
    D: int
    D_u: int
    witnesses: dict | None = None

    def to_json_dict(self) -> dict:
        out = {name: getattr(self, name) for name in _REPORT_FIELDS}
        if self.witnesses is not None:
            out["witnesses"] = self.witnesses
        return out

    def to_text(self) -> str:
        return "\n".join(f"{name}={getattr(self, name)}" for name in _REPORT_FIELDS)


def _family_witness(x: TernaryString | None, family) -> dict | None:
    if x is None:
        return None
    return {
        "input": str(x),
        "blocks": [sorted(w.block) for w in family],
        "altered": [str(w.altered) for w in family],
    }


def _certificate_witness(x: TernaryString | None, w: CertificateWitness | None):
    if x is None or w is None:
        return None
    return {"input": str(x), "certificate": str(w.assignment)}


def measure_report(
    f: BooleanFunction,
    *,
    with_witnesses: bool = False,
    table: HazardFreeTable | None = None,
    table_cap: int | None = None,
    search_cap: int | None = None,
) -> MeasureReport:
    """Compute every measure of f, including exact decision-tree depths."""
    if table is None:
        table = hazard_free_table(f, cap=table_cap)
    s_u, s_u_x, s_u_var = _sensitivity_scan(table)
    blocks = block_summary(table)
    certs = certificate_summary(table)
    classical = standard_measures(f, table)
    d_u, tree_u = trees.query_complexity_u(table, cap=search_cap)
    d, tree_b = trees.query_complexity(f, table=table, cap=search_cap)

    witnesses = None
    if with_witnesses:
        pick = 0 if certs.c_u_0 >= certs.c_u_1 else 1
        witnesses = {
            "s_u": {
                "input": str(s_u_x),
                "variable": s_u_var,
            },
            "bs_u": _family_witness(blocks.attaining_global, blocks.family_global),
            "bs_u_0": _family_witness(blocks.attaining[0], blocks.families[0]),
            "bs_u_1": _family_witness(blocks.attaining[1], blocks.families[1]),
            "bs_u_uval": _family_witness(blocks.attaining[2], blocks.families[2]),
            "C_u_0": _certificate_witness(certs.attaining[0], certs.witnesses[0]),
            "C_u_1": _certificate_witness(certs.attaining[1], certs.witnesses[1]),
            "C_u": _certificate_witness(certs.attaining[pick], certs.witnesses[pick]),
            "C_u_uval": _certificate_witness(certs.attaining[2], certs.witnesses[2]),
            "s": {
                "input": str(classical.s_attaining),
                "variable": classical.s_variable,
            },
            "bs": _family_witness(classical.bs_attaining, classical.bs_family),
            "C": _certificate_witness(classical.c_attaining, classical.c_witness),
            "D": {"depth": d, "tree": trees.tree_to_json_dict(tree_b)},
            "D_u": {"depth": d_u, "tree": trees.tree_to_json_dict(tree_u)},
        }

    return MeasureReport(
        s_u=s_u,
        bs_u=blocks.bs_u,
        bs_u_0=blocks.by_value[0],
        bs_u_1=blocks.by_value[1],
        bs_u_uval=blocks.by_value[2],
        C_u_0=certs.c_u_0,
        C_u_1=certs.c_u_1,
        C_u=certs.c_u,
        C_u_uval=certs.c_u_uval,
        s=classical.s,
        bs=classical.bs,
        C=classical.c,
        D=d,
        D_u=d_u,
        witnesses=witnesses,
    )
