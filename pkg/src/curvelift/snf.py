"""Exact integer linear algebra: Smith normal form and finitely generated
abelian groups as invariant-factor lists.

Matrices are plain lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass

IntMatrix = list  # list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a or not b:
        return [[] for _ in a]
    cols = len(b[0])
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for row in a
    ]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U*m*V = D, U and V unimodular, D diagonal with
    non-negative entries satisfying the divisibility chain d1 | d2 | ...
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    A = [[int(x) for x in row] for row in m]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(i, k, f):
        # row_i += f * row_k
        A[i] = [x + f * y for x, y in zip(A[i], A[k])]
        U[i] = [x + f * y for x, y in zip(U[i], U[k])]

    def add_col(j, k, f):
        # col_j += f * col_k
        for row in A:
            row[j] += f * row[k]
        for row in V:
            row[j] += f * row[k]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = A[i][j]
                if v != 0 and (best is None or abs(v) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        piv = find_pivot(t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Euclid on column t
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t] % A[t][t] != 0:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    swap_rows(t, i)
                    dirty = True
            if dirty:
                continue
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
            # Euclid on row t (column swaps can repopulate column t; loop)
            dirty = False
            for j in range(t + 1, cols):
                if A[t][j] % A[t][t] != 0:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    swap_cols(t, j)
                    dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
            # divisibility of the remaining block by the pivot
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % A[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            add_row(t, t, -2)  # negate row t
        t += 1
    return A, U, V


def diagonal(d: IntMatrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ----------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/t1 + ... with the invariant-factor chain t1 | t2 | ..."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a chain: {self.torsion}")
        if any(tq < 2 for tq in self.torsion):
            raise ValueError("invariant factors must be >= 2")

    @classmethod
    def from_relation_matrix(cls, relations: IntMatrix, num_generators: int) -> "AbelianGroup":
        """Cokernel Z^n / (row space) from a relation matrix (rows = relators)."""
        if not relations:
            return cls(num_generators)
        if any(len(row) != num_generators for row in relations):
            raise ValueError("relation rows must have num_generators entries")
        d, _, _ = smith_normal_form(relations)
        diag = diagonal(d)
        nonzero = [x for x in diag if x != 0]
        return cls(
            rank=num_generators - len(nonzero),
            torsion=tuple(x for x in nonzero if x >= 2),
        )

    def presentation_matrix(self) -> tuple[IntMatrix, int]:
        """Relation matrix (rows, num_generators) presenting this group:
        free coordinates first, then one torsion coordinate per factor."""
        n = self.rank + len(self.torsion)
        rows = []
        for i, tq in enumerate(self.torsion):
            row = [0] * n
            row[self.rank + i] = tq
            rows.append(row)
        return rows, n

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{tq}" for tq in self.torsion]
        return " + ".join(parts) if parts else "0"


def filling_quotient(relations: IntMatrix, num_generators: int, sigma: list[int]) -> AbelianGroup:
    """Quotient of the presented group by the cyclic subgroup <sigma>:
    append sigma as one more relator row and rerun Smith normal form."""
    if len(sigma) != num_generators:
        raise ValueError(
            f"sigma has {len(sigma)} coordinates, expected {num_generators}"
        )
    rows = [list(row) for row in relations] + [list(sigma)]
    return AbelianGroup.from_relation_matrix(rows, num_generators)


@dataclass(frozen=True)
class BundleFit:
    """Solution of the circle-bundle homology formulas for (genus, e)."""

    genus: int
    euler_numbers: tuple[int, ...]


def genus_from_filling_h1(h: AbelianGroup, boundary_count: int) -> BundleFit | None:
    """Invert H1 of a circle bundle: closed case Z^2g + Z/|e| (Z^{2g+1} when
    e = 0), bounded case Z^{2g+k-1} + Z.  Returns None when no (g, e) fits."""
    if boundary_count > 0:
        if h.torsion:
            return None
        free = h.rank - boundary_count  # rank = 2g + k
        if free < 0 or free % 2 != 0:
            return None
        return BundleFit(genus=free // 2, euler_numbers=(0,))
    if len(h.torsion) > 1:
        return None
    if len(h.torsion) == 1:
        if h.rank % 2 != 0:
            return None
        tq = h.torsion[0]
        return BundleFit(genus=h.rank // 2, euler_numbers=(tq, -tq))
    # torsion free: either e = +-1 (rank 2g) or e = 0 (rank 2g + 1)
    if h.rank % 2 == 0:
        return BundleFit(genus=h.rank // 2, euler_numbers=(1, -1))
    return BundleFit(genus=(h.rank - 1) // 2, euler_numbers=(0,))
