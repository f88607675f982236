"""Bit-sequence kernel: enumeration, deletion balls, subsequence tests, weights.

Binary sequences are represented as ASCII strings of '0'/'1', most
significant bit first.  Python's string ordering then coincides with the
lexicographic order used for tie-breaking ('0' < '1'), and with the numeric
order of the integer value of the string read MSB-first.  Positional
formulas below use 1-based indices i in [1..n].
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError

# 2^26 vertices is past desk scale; enforced at enumeration/graph build.
MAX_LENGTH = 26


def check_length(n):
    if not 1 <= n <= MAX_LENGTH:
        raise CapacityError(f"code length must be in [1, {MAX_LENGTH}], got {n}")


def rank_of(v):
    """Lexicographic rank of a bitstring, equal to its MSB-first integer value."""
    return int(v, 2)


def string_of(rank, n):
    """Inverse of :func:`rank_of` for length-n strings."""
    return format(rank, f"0{n}b")


def enumerate_strings(n):
    """All 2^n bitstrings of length n in ascending lexicographic order."""
    check_length(n)
    return [format(r, f"0{n}b") for r in range(1 << n)]


@dataclass(frozen=True)
class DeletionBall:
    """All distinct subsequences obtained by deleting exactly s bits."""

    origin: str
    s: int
    members: tuple  # sorted, deduplicated

    def __contains__(self, item):
        return item in self.members


def deletion_ball(v, s):
    n = len(v)
    if not 1 <= s < n:
        raise ValueError(f"deletions must satisfy 1 <= s < n, got s={s}, n={n}")
    members = {
        "".join(v[i] for i in range(n) if i not in dropped)
        for dropped in combinations(range(n), s)
    }
    return DeletionBall(origin=v, s=s, members=tuple(sorted(members)))


def deletion_ball_ranks(rank, n, s):
    """Ranks of the s-deletion ball of the length-n string with the given rank.

    Fast path used by the graph builder; bit-twiddling for s=1, string
    fallback otherwise.
    """
    if s == 1:
        out = set()
        for i in range(n):  # delete bit at weight 2^i
            low_mask = (1 << i) - 1
            out.add(((rank >> (i + 1)) << i) | (rank & low_mask))
        return out
    v = string_of(rank, n)
    return {rank_of(m) for m in deletion_ball(v, s).members}


def shares_subsequence(a, b, s):
    """True iff a and b share a common subsequence of length >= n - s.

    Two-row LCS dynamic program with early exit at the threshold; equivalent
    to the deletion balls of a and b intersecting (tested as a property).
    """
    n = len(a)
    if len(b) != n:
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if not 1 <= s < n:
        raise ValueError(f"deletions must satisfy 1 <= s < n, got s={s}, n={n}")
    threshold = n - s
    # LCS length can drop by at most 1 per differing popcount.
    ones_a = a.count("1")
    ones_b = b.count("1")
    if abs(ones_a - ones_b) > s:
        return False
    prev = [0] * (n + 1)
    current = [0] * (n + 1)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, n + 1):
            if ai == b[j - 1]:
                current[j] = prev[j - 1] + 1
            else:
                cj = prev[j]
                cj1 = current[j - 1]
                current[j] = cj if cj >= cj1 else cj1
            if current[j] >= threshold:
                return True
        prev, current = current, prev
    return False


def vt_residual(v):
    """(sum_i i * v_i) mod (n + 1) with 1-based i; the VT syndrome of v."""
    n = len(v)
    return sum(i for i in range(1, n + 1) if v[i - 1] == "1") % (n + 1)


def reverse_weight(v):
    """sum_i (n - i + 1) * v_i with 1-based i: weights n, n-1, ..., 1."""
    n = len(v)
    return sum(n - i + 1 for i in range(1, n + 1) if v[i - 1] == "1")


def run_count(v):
    """Number of maximal runs of equal bits; equals |deletion_ball(v, 1)|."""
    return 1 + sum(1 for a, b in zip(v, v[1:]) if a != b)
