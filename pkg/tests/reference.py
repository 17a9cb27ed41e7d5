"""Brute-force reference implementations the test suite trusts.

Everything here recomputes definitions by plain enumeration over raw
truth-table integers, deliberately independent of the package's
optimized code paths.  Trits are 0, 1 and U = 2; truth-table bit i is
the value at binary index i with variable 1 as the most significant
bit of the index.
"""

from functools import lru_cache
from itertools import combinations, product

U = 2

KLEENE_AND = {
    (0, 0): 0, (0, 1): 0, (0, U): 0,
    (1, 0): 0, (1, 1): 1, (1, U): U,
    (U, 0): 0, (U, 1): U, (U, U): U,
}
KLEENE_OR = {
    (0, 0): 0, (0, 1): 1, (0, U): U,
    (1, 0): 1, (1, 1): 1, (1, U): 1,
    (U, 0): U, (U, 1): 1, (U, U): U,
}
KLEENE_NOT = {0: 1, 1: 0, U: U}


def ternary_strings(n):
    return product((0, 1, U), repeat=n)


def bin_index(y) -> int:
    idx = 0
    for t in y:
        idx = idx * 2 + t
    return idx


def resolution_eval(bits: int, n: int, x) -> int:
    """Extension value of x by enumerating every binary resolution."""
    spots = [p for p in range(n) if x[p] == U]
    seen = set()
    for fill in product((0, 1), repeat=len(spots)):
        y = list(x)
        for k, p in enumerate(spots):
            y[p] = fill[k]
        seen.add((bits >> bin_index(y)) & 1)
        if len(seen) == 2:
            return U
    return seen.pop()


def full_table(bits: int, n: int) -> dict:
    return {x: resolution_eval(bits, n, x) for x in ternary_strings(n)}


# ---------------------------------------------------------------------------
# Measures, straight from the definitions.


def sensitive_blocks(table: dict, n: int, x) -> list:
    """Every nonempty block sensitive at x: some change inside it
    (over all three trits) moves the table value."""
    v = table[x]
    out = []
    for r in range(1, n + 1):
        for blk in combinations(range(n), r):
            for alt in product((0, 1, U), repeat=r):
                y = list(x)
                for k, p in enumerate(blk):
                    y[p] = alt[k]
                if table[tuple(y)] != v:
                    out.append(frozenset(blk))
                    break
    return out


def max_disjoint(blocks) -> int:
    """Largest pairwise-disjoint subfamily, branch and bound."""
    blocks = sorted(blocks, key=lambda b: (len(b), sorted(b)))
    best = 0

    def go(i, used, count):
        nonlocal best
        if count > best:
            best = count
        if i == len(blocks) or count + len(blocks) - i <= best:
            return
        if not (used & blocks[i]):
            go(i + 1, used | blocks[i], count + 1)
        go(i + 1, used, count)

    go(0, frozenset(), 0)
    return best


def bs_u(table: dict, n: int, value=None) -> int:
    best = 0
    for x in table:
        if value is not None and table[x] != value:
            continue
        best = max(best, max_disjoint(sensitive_blocks(table, n, x)))
    return best


def s_u(table: dict, n: int) -> int:
    best = 0
    for x in table:
        v = table[x]
        count = 0
        for p in range(n):
            for d in (0, 1, U):
                if d == x[p]:
                    continue
                y = list(x)
                y[p] = d
                if table[tuple(y)] != v:
                    count += 1
                    break
        best = max(best, count)
    return best


def certificate_at(table: dict, n: int, x) -> int:
    """Minimum domain size forcing the value on all consistent strings."""
    v = table[x]
    for r in range(n + 1):
        for dom in combinations(range(n), r):
            if all(table[y] == v for y in table
                   if all(y[p] == x[p] for p in dom)):
                return r
    return n


def certificate_u(table: dict, n: int):
    """(C_u_0, C_u_1, C_u_uval), each a max of minimum certificates."""
    out = []
    for value in (0, 1, U):
        best = 0
        for x in table:
            if table[x] == value:
                best = max(best, certificate_at(table, n, x))
        out.append(best)
    return tuple(out)


def classical_measures(bits: int, n: int):
    """(s, bs, C) over binary inputs with flip blocks."""
    def value(idx):
        return (bits >> idx) & 1

    s = bs = c = 0
    for idx in range(1 << n):
        v = value(idx)
        flips = [p for p in range(n)
                 if value(idx ^ (1 << (n - 1 - p))) != v]
        s = max(s, len(flips))
        blocks = []
        for r in range(1, n + 1):
            for blk in combinations(range(n), r):
                mask = 0
                for p in blk:
                    mask |= 1 << (n - 1 - p)
                if value(idx ^ mask) != v:
                    blocks.append(frozenset(blk))
        bs = max(bs, max_disjoint(blocks))
        for r in range(n + 1):
            found = False
            for dom in combinations(range(n), r):
                ok = True
                for y in range(1 << n):
                    agrees = all(((y >> (n - 1 - p)) & 1) ==
                                 ((idx >> (n - 1 - p)) & 1) for p in dom)
                    if agrees and value(y) != v:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                c = max(c, r)
                break
    return s, bs, c


# ---------------------------------------------------------------------------
# Exact depths as plain minimax games.


def depth_u(table: dict, n: int) -> int:
    """Optimal ternary-tree depth: adversary picks any trit answer."""

    @lru_cache(maxsize=None)
    def go(cells):
        vs = {table[y] for y in table
              if all(c == 3 or c == t for c, t in zip(cells, y))}
        if len(vs) == 1:
            return 0
        best = n + 1
        for p in range(n):
            if cells[p] != 3:
                continue
            worst = 0
            for a in (0, 1, U):
                child = list(cells)
                child[p] = a
                worst = max(worst, go(tuple(child)))
                if worst + 1 >= best:
                    break
            best = min(best, 1 + worst)
        return best

    return go((3,) * n)


def depth(bits: int, n: int) -> int:
    """Optimal classical depth over binary inputs and answers."""

    @lru_cache(maxsize=None)
    def go(cells):
        vs = set()
        for idx in range(1 << n):
            if all(c == 3 or c == ((idx >> (n - 1 - p)) & 1)
                   for p, c in enumerate(cells)):
                vs.add((bits >> idx) & 1)
        if len(vs) == 1:
            return 0
        best = n + 1
        for p in range(n):
            if cells[p] != 3:
                continue
            worst = max(go(tuple(a if q == p else c
                                 for q, c in enumerate(cells)))
                        for a in (0, 1))
            best = min(best, 1 + worst)
        return best

    return go((3,) * n)


def downward_closure_bits(bits: int, n: int) -> int:
    """OR of f over all binary points below x, as a table integer."""
    out = 0
    for idx in range(1 << n):
        hit = 0
        for sub in range(1 << n):
            if sub & ~idx:
                continue
            hit |= (bits >> sub) & 1
        out |= hit << idx
    return out
