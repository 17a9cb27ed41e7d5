"""Boolean functions and their hazard-free extensions to three-valued inputs.

A Boolean function on n variables is extended to inputs over {0, 1, u},
where u stands for an unresolved/unknown bit.  The extension takes the
value b in {0, 1} on input y exactly when every way of resolving the u
positions of y to constants yields b; otherwise it takes the value u.
This is the unique hazard-free extension and it restricts to Kleene's
strong three-valued logic on AND, OR and NOT.

Conventions used throughout the package:

* variables are numbered 1..n and variable 1 is the most significant bit
  of every index (truth tables, ternary codes, hex serializations);
* trits are the ints 0, 1 and 2, with 2 rendered as the character 'u';
* partial assignments add a fourth cell value 3, rendered as '*', for
  positions not assigned at all.

All types here are immutable; every function of the module is pure.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

ZERO = 0
ONE = 1
UNKNOWN = 2  # the trit 'u'
STAR = 3     # unassigned cell of a partial assignment, never a query answer

TRIT_CHARS = "01u"
CELL_CHARS = "01u*"

# Arity caps guard against accidental huge allocations (3**n and 4**n
# table/memo sizes).  They are defaults, not hard limits: every entry
# point that builds such a table takes a cap argument.
DEFAULT_TABLE_CAP = 16
DEFAULT_SEARCH_CAP = 12


class SpecError(ValueError):
    """Raised for malformed function spec strings."""


class ArityCapError(ValueError):
    """Raised when an operation would exceed the configured arity cap."""


def check_cap(arity: int, cap: int | None, default: int, what: str) -> None:
    limit = default if cap is None else cap
    if arity > limit:
        raise ArityCapError(
            f"{what} on {arity} variables exceeds the cap of {limit}; "
            f"raise the cap explicitly if this size is intended"
        )


def _parse_chars(text: str, alphabet: str, kind: str) -> tuple[int, ...]:
    values = []
    for ch in text:
        idx = alphabet.find(ch)
        if idx < 0:
            raise ValueError(f"invalid character {ch!r} in {kind} {text!r}")
        values.append(idx)
    if not values:
        raise ValueError(f"empty {kind}")
    return tuple(values)


@dataclass(frozen=True)
class TernaryString:
    """A string over {0, 1, u}; the input alphabet of the u-query model."""

    trits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.trits:
            raise ValueError("ternary string must have length >= 1")
        if any(t not in (0, 1, 2) for t in self.trits):
            raise ValueError(f"trits must be 0, 1 or 2, got {self.trits}")

    @classmethod
    def parse(cls, text: str) -> "TernaryString":
        return cls(_parse_chars(text, TRIT_CHARS, "ternary string"))

    @classmethod
    def from_code(cls, code: int, arity: int) -> "TernaryString":
        """Inverse of :meth:`code`: base-3 digits, variable 1 most significant."""
        trits = [0] * arity
        for pos in range(arity - 1, -1, -1):
            code, trits[pos] = divmod(code, 3)
        return cls(tuple(trits))

    @classmethod
    def all_strings(cls, arity: int) -> Iterator["TernaryString"]:
        """All 3**arity strings in lexicographic order (0 < 1 < u per position)."""
        for trits in product((0, 1, 2), repeat=arity):
            yield cls(trits)

    def code(self) -> int:
        """Base-3 encoding with digit map 0->0, 1->1, u->2."""
        c = 0
        for t in self.trits:
            c = c * 3 + t
        return c

    def __str__(self) -> str:
        return "".join(TRIT_CHARS[t] for t in self.trits)

    def __len__(self) -> int:
        return len(self.trits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.trits)

    def __getitem__(self, pos: int) -> int:
        return self.trits[pos]

    def is_binary(self) -> bool:
        return UNKNOWN not in self.trits

    def u_positions(self) -> tuple[int, ...]:
        """0-based positions holding u."""
        return tuple(p for p, t in enumerate(self.trits) if t == UNKNOWN)

    def bin_index(self) -> int:
        """Truth-table index of a fully resolved string (variable 1 = MSB)."""
        if not self.is_binary():
            raise ValueError(f"{self} contains u and has no truth-table index")
        idx = 0
        for t in self.trits:
            idx = idx * 2 + t
        return idx

    def replace(self, pos: int, trit: int) -> "TernaryString":
        cells = list(self.trits)
        cells[pos] = trit
        return TernaryString(tuple(cells))

    def refines(self, other: "TernaryString") -> bool:
        """True when self is obtained from other by resolving some u positions."""
        if len(self) != len(other):
            return False
        return all(o == UNKNOWN or s == o for s, o in zip(self.trits, other.trits))


def as_ternary(value: "TernaryString | str | Sequence[int]") -> TernaryString:
    if isinstance(value, TernaryString):
        return value
    if isinstance(value, str):
        return TernaryString.parse(value)
    return TernaryString(tuple(value))


def resolutions(y: TernaryString | str) -> list[TernaryString]:
    """All binary strings obtained by resolving every u of y, in lex order."""
    y = as_ternary(y)
    spots = y.u_positions()
    out = []
    for bits in product((0, 1), repeat=len(spots)):
        z = list(y.trits)
        for pos, b in zip(spots, bits):
            z[pos] = b
        out.append(TernaryString(tuple(z)))
    return out


@dataclass(frozen=True)
class PartialAssignment:
    """Cells over {0, 1, u, *}; '*' marks positions outside the domain.

    A ternary string y is consistent with the assignment when it agrees
    with every non-* cell.  Note that u is an ordinary cell value here:
    a recorded oracle answer of u constrains y to have u at that spot.
    """

    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("partial assignment must have length >= 1")
        if any(c not in (0, 1, 2, 3) for c in self.cells):
            raise ValueError(f"cells must be 0..3, got {self.cells}")

    @classmethod
    def parse(cls, text: str) -> "PartialAssignment":
        return cls(_parse_chars(text, CELL_CHARS, "partial assignment"))

    @classmethod
    def blank(cls, arity: int) -> "PartialAssignment":
        return cls((STAR,) * arity)

    @classmethod
    def restriction(cls, x: TernaryString, domain: Iterable[int]) -> "PartialAssignment":
        """x kept on the given variable indices (1-based), '*' elsewhere."""
        cells = [STAR] * len(x)
        for var in domain:
            cells[var - 1] = x[var - 1]
        return cls(tuple(cells))

    def __str__(self) -> str:
        return "".join(CELL_CHARS[c] for c in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, pos: int) -> int:
        return self.cells[pos]

    @property
    def size(self) -> int:
        """Number of assigned positions."""
        return sum(1 for c in self.cells if c != STAR)

    def domain(self) -> frozenset[int]:
        """Assigned variable indices, 1-based."""
        return frozenset(p + 1 for p, c in enumerate(self.cells) if c != STAR)

    def assign(self, pos: int, trit: int) -> "PartialAssignment":
        cells = list(self.cells)
        cells[pos] = trit
        return PartialAssignment(tuple(cells))

    def is_consistent(self, y: TernaryString | str) -> bool:
        y = as_ternary(y)
        if len(y) != len(self):
            raise ValueError("length mismatch")
        return all(c == STAR or c == t for c, t in zip(self.cells, y.trits))

    def coarsest(self) -> TernaryString:
        """The consistent string with u at every unassigned position.

        Every consistent string resolves to a subset of its resolutions,
        which makes it the single lookup deciding value-forcing tests.
        """
        return TernaryString(tuple(UNKNOWN if c == STAR else c for c in self.cells))


def _hex_width(arity: int) -> int:
    return max(1, (1 << arity) // 4)


@dataclass(frozen=True)
class BooleanFunction:
    """A total function {0,1}^arity -> {0,1}, stored as a packed truth table.

    Bit i of ``bits`` is the value at truth-table index i, where the index
    of a binary input has variable 1 as its most significant bit.
    """

    arity: int
    bits: int

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError("arity must be >= 1")
        if self.bits < 0 or self.bits.bit_length() > (1 << self.arity):
            raise ValueError("truth table does not fit the declared arity")

    @classmethod
    def from_table(cls, table: Iterable[int]) -> "BooleanFunction":
        entries = list(table)
        n = max(1, (len(entries) - 1).bit_length())
        if len(entries) != 1 << n or len(entries) < 2:
            raise ValueError(f"table length {len(entries)} is not a power of two >= 2")
        bits = 0
        for idx, v in enumerate(entries):
            if v not in (0, 1):
                raise ValueError(f"table entry {v!r} is not a bit")
            bits |= v << idx
        return cls(n, bits)

    @classmethod
    def constant(cls, arity: int, value: int) -> "BooleanFunction":
        if value not in (0, 1):
            raise ValueError("constant value must be 0 or 1")
        bits = ((1 << (1 << arity)) - 1) if value else 0
        return cls(arity, bits)

    @classmethod
    def from_hex(cls, hex_table: str, arity: int) -> "BooleanFunction":
        if arity < 1:
            raise SpecError("arity must be >= 1")
        width = _hex_width(arity)
        if len(hex_table) != width:
            raise SpecError(
                f"hex table {hex_table!r} must have exactly {width} digits for arity {arity}"
            )
        try:
            packed = int(hex_table, 16)
        except ValueError:
            raise SpecError(f"malformed hex table {hex_table!r}") from None
        size = 1 << arity
        total_bits = 4 * width
        if total_bits > size and packed & ((1 << (total_bits - size)) - 1):
            raise SpecError(f"hex table {hex_table!r} has nonzero padding bits")
        bits = 0
        for idx in range(size):
            bits |= ((packed >> (total_bits - 1 - idx)) & 1) << idx
        return cls(arity, bits)

    def to_hex(self) -> str:
        """Table bits MSB-first: entry 0 lands in the top bit of digit 0."""
        width = _hex_width(self.arity)
        size = 1 << self.arity
        packed = 0
        total_bits = 4 * width
        for idx in range(size):
            packed |= ((self.bits >> idx) & 1) << (total_bits - 1 - idx)
        return format(packed, f"0{width}x")

    def to_spec(self) -> str:
        return f"table:{self.to_hex()}:{self.arity}"

    def value_at_index(self, idx: int) -> int:
        return (self.bits >> idx) & 1

    def evaluate(self, x: TernaryString | str | Sequence[int]) -> int:
        """Value on a fully resolved input; use a hazard table for u inputs."""
        x = as_ternary(x)
        if len(x) != self.arity:
            raise ValueError(f"input length {len(x)} != arity {self.arity}")
        return self.value_at_index(x.bin_index())

    def truth_table(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(1 << self.arity))

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << (1 << self.arity)) - 1


@dataclass(frozen=True)
class Orientation:
    """Per-variable complementation pattern witnessing unateness.

    Bit s_i = 0 means the function is nondecreasing in variable i after
    the shift x -> f(x xor s), bit 1 means it had to be flipped.
    """

    bits: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def parse(cls, text: str) -> "Orientation":
        vals = _parse_chars(text, "01", "orientation")
        return cls(vals)


class HazardFreeTable:
    """The hazard-free extension of a function, tabulated over all 3**n inputs.

    ``values[code]`` is the extension's value at the ternary string with
    that base-3 code (digits 0, 1, u->2; variable 1 most significant).
    Instances are immutable and safe to share across threads/processes.
    """

    __slots__ = ("function", "values", "_pow3")

    def __init__(self, function: BooleanFunction, values: bytes):
        if len(values) != 3 ** function.arity:
            raise ValueError("value table has wrong size")
        self.function = function
        self.values = values
        self._pow3 = tuple(3 ** k for k in range(function.arity + 1))

    @property
    def arity(self) -> int:
        return self.function.arity

    def value_at_code(self, code: int) -> int:
        return self.values[code]

    def evaluate(self, y: TernaryString | str | Sequence[int]) -> int:
        y = as_ternary(y)
        if len(y) != self.arity:
            raise ValueError(f"input length {len(y)} != arity {self.arity}")
        return self.values[y.code()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HazardFreeTable):
            return NotImplemented
        return self.function == other.function and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.function, self.values))


def hazard_free_table(f: BooleanFunction, cap: int | None = None) -> HazardFreeTable:
    """Tabulate the hazard-free extension of f over all 3**n ternary inputs.

    Computed by dynamic programming over the number of u positions: an
    entry with a u at position i is the merge of its two one-step
    resolutions at i (equal bits stay, disagreement gives u).  No entry
    ever enumerates its full resolution set.
    """
    n = f.arity
    check_cap(n, cap, DEFAULT_TABLE_CAP, "hazard-free table")
    vals = np.empty((3,) * n, dtype=np.uint8)
    table = np.fromiter(
        ((f.bits >> i) & 1 for i in range(1 << n)), dtype=np.uint8, count=1 << n
    )
    vals[np.ix_(*([0, 1],) * n)] = table.reshape((2,) * n)
    # Axis k is variable k+1.  Merging axis by axis is sound because the
    # entry for a u-set S is (re)written at every axis in S and the last
    # write, at max(S), reads children whose u-sets are subsets of S
    # already finalized by earlier axes.
    for axis in range(n):
        sl0 = tuple(slice(None) if a != axis else 0 for a in range(n))
        sl1 = tuple(slice(None) if a != axis else 1 for a in range(n))
        slu = tuple(slice(None) if a != axis else 2 for a in range(n))
        a0, a1 = vals[sl0], vals[sl1]
        vals[slu] = np.where(a0 == a1, a0, np.uint8(UNKNOWN))
    return HazardFreeTable(f, vals.reshape(-1).tobytes())


def dependent_variables(f: BooleanFunction) -> frozenset[int]:
    """Variable indices (1-based) the function actually depends on."""
    n = f.arity
    deps = set()
    for var in range(1, n + 1):
        weight = 1 << (n - var)
        for idx in range(1 << n):
            if idx & weight:
                continue
            if f.value_at_index(idx) != f.value_at_index(idx | weight):
                deps.add(var)
                break
    return frozenset(deps)


def is_nondegenerate(f: BooleanFunction) -> bool:
    return len(dependent_variables(f)) == f.arity


def is_monotone(f: BooleanFunction) -> bool:
    """True when raising any input bit never lowers the output."""
    n = f.arity
    for var in range(n):
        weight = 1 << var
        for idx in range(1 << n):
            if idx & weight:
                continue
            if f.value_at_index(idx) > f.value_at_index(idx | weight):
                return False
    return True


def unate_orientation(f: BooleanFunction) -> Orientation | None:
    """Orientation s such that x -> f(x xor s) is monotone, or None.

    s_i is 0 when f is nondecreasing in variable i and 1 when it is
    nonincreasing; variables with mixed behaviour make f non-unate and
    variables with no influence get the bit 0.
    """
    n = f.arity
    bits = []
    for var in range(1, n + 1):
        weight = 1 << (n - var)
        up = down = False
        for idx in range(1 << n):
            if idx & weight:
                continue
            lo, hi = f.value_at_index(idx), f.value_at_index(idx | weight)
            if lo < hi:
                up = True
            elif lo > hi:
                down = True
        if up and down:
            return None
        bits.append(1 if down else 0)
    return Orientation(tuple(bits))


def downward_closure(f: BooleanFunction) -> BooleanFunction:
    """g(x) = 1 iff f(z) = 1 for some z <= x bitwise.  Always monotone."""
    n = f.arity
    table = list(f.truth_table())
    for b in range(n):
        weight = 1 << b
        for idx in range(1 << n):
            if idx & weight:
                table[idx] |= table[idx ^ weight]
    return BooleanFunction.from_table(table)


# ---------------------------------------------------------------------------
# Named function families and the function spec mini-language.


def _or_function(n: int) -> BooleanFunction:
    return BooleanFunction(n, ((1 << (1 << n)) - 1) & ~1)


def _and_function(n: int) -> BooleanFunction:
    return BooleanFunction(n, 1 << ((1 << n) - 1))


def _parity_function(n: int) -> BooleanFunction:
    bits = 0
    for idx in range(1 << n):
        bits |= (idx.bit_count() & 1) << idx
    return BooleanFunction(n, bits)


def _majority_function(n: int) -> BooleanFunction:
    if n % 2 == 0:
        raise SpecError("maj:n requires odd n")
    bits = 0
    for idx in range(1 << n):
        if 2 * idx.bit_count() > n:
            bits |= 1 << idx
    return BooleanFunction(n, bits)


def _indexing_function(n: int) -> BooleanFunction:
    """n addressing variables select one of 2**n target variables.

    The addressing block, read with variable 1 as MSB, names the target
    position 1..2**n among the remaining variables.
    """
    m = n + (1 << n)
    targets = 1 << n
    bits = 0
    for idx in range(1 << m):
        addr = idx >> targets
        v = (idx >> (targets - 1 - addr)) & 1
        bits |= v << idx
    return BooleanFunction(m, bits)


def _monotone_indexing_function(n: int) -> BooleanFunction:
    """Monotone variant: inputs of middle Hamming weight select a target.

    Defined for even n on n + C(n, n/2) variables: the value is 0 below
    weight n/2 on the addressing block, 1 above it, and at exact weight
    n/2 it is the target variable indexed by the addressing string (the
    weight-n/2 strings ordered lexicographically).
    """
    if n % 2 != 0:
        raise SpecError("mind:n requires even n")
    half = n // 2
    middle = [s for s in range(1 << n) if s.bit_count() == half]
    # Lex order on bit strings with variable 1 as MSB is descending
    # integer order of the reversed... integer order with MSB-first
    # reading is exactly lexicographic order of the strings.
    middle.sort()
    rank = {s: i for i, s in enumerate(middle)}
    k = len(middle)
    m = n + k
    bits = 0
    for idx in range(1 << m):
        addr = idx >> k
        w = addr.bit_count()
        if w < half:
            v = 0
        elif w > half:
            v = 1
        else:
            v = (idx >> (k - 1 - rank[addr])) & 1
        bits |= v << idx
    return BooleanFunction(m, bits)


def _random_function(n: int, seed: int) -> BooleanFunction:
    rng = _random.Random(seed)
    return BooleanFunction(n, rng.getrandbits(1 << n))


def parse_spec(spec: str) -> dict:
    """Parse a function spec string into family metadata.

    Returns a dict with keys ``family``, ``params`` (dict) and ``arity``.
    """
    parts = spec.strip().split(":")
    family = parts[0]

    def int_param(text: str, name: str) -> int:
        try:
            return int(text, 10)
        except ValueError:
            raise SpecError(f"{name} in spec {spec!r} must be an integer") from None

    if family in ("or", "and", "parity", "maj", "ind", "mind"):
        if len(parts) != 2:
            raise SpecError(f"spec {spec!r} must look like {family}:<n>")
        n = int_param(parts[1], "n")
        if n < 1:
            raise SpecError(f"n must be >= 1 in spec {spec!r}")
        if family == "maj" and n % 2 == 0:
            raise SpecError("maj:n requires odd n")
        if family == "mind" and n % 2 != 0:
            raise SpecError("mind:n requires even n")
        if family == "ind":
            arity = n + (1 << n)
        elif family == "mind":
            arity = n + comb(n, n // 2)
        else:
            arity = n
        return {"family": family, "params": {"n": n}, "arity": arity}
    if family == "table":
        if len(parts) != 3:
            raise SpecError(f"spec {spec!r} must look like table:<hex>:<n>")
        n = int_param(parts[2], "n")
        if n < 1:
            raise SpecError(f"n must be >= 1 in spec {spec!r}")
        return {"family": "table", "params": {"hex": parts[1], "n": n}, "arity": n}
    if family == "random":
        if len(parts) != 3:
            raise SpecError(f"spec {spec!r} must look like random:<n>:<seed>")
        n = int_param(parts[1], "n")
        seed = int_param(parts[2], "seed")
        if n < 1:
            raise SpecError(f"n must be >= 1 in spec {spec!r}")
        return {"family": "random", "params": {"n": n, "seed": seed}, "arity": n}
    raise SpecError(f"unknown function family in spec {spec!r}")


def generate(spec: str, cap: int | None = None) -> BooleanFunction:
    """Build a function from a spec string such as ``or:3`` or ``table:e8:2``.

    Families: or:n, and:n, parity:n, maj:n (odd n), ind:n (arity n + 2**n),
    mind:n (even n), table:<hex>:<n>, random:<n>:<seed>.
    """
    meta = parse_spec(spec)
    arity = meta["arity"]
    check_cap(arity, cap, DEFAULT_TABLE_CAP, f"function spec {spec!r}")
    family, params = meta["family"], meta["params"]
    if family == "or":
        return _or_function(params["n"])
    if family == "and":
        return _and_function(params["n"])
    if family == "parity":
        return _parity_function(params["n"])
    if family == "maj":
        return _majority_function(params["n"])
    if family == "ind":
        return _indexing_function(params["n"])
    if family == "mind":
        return _monotone_indexing_function(params["n"])
    if family == "table":
        return BooleanFunction.from_hex(params["hex"], params["n"])
    return _random_function(params["n"], params["seed"])
