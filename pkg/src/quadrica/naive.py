"""Loop-based reference decider for quadratic pair maps.

This is an intentionally naive re-implementation of the defining clauses —
plain Python integers, nested lists, explicit quadruple loops, no shared code
with the vectorized engine — kept as an independent oracle the fast path is
tested against.  Do not "optimize" it; slowness and independence are the
point.
"""

from __future__ import annotations

__all__ = ["naive_cp_quadratic"]


def naive_cp_quadratic(ma, nb, table) -> bool:
    """Decide whether ``table`` is a quadratic pair map (M,A) → (N,B):
    f(A) and all defect values in B, defects vanishing against A, the
    additive and bracket defects linear in each slot, and the scalar
    defects homogeneous of degree two."""
    madd = [[int(v) for v in row] for row in ma.group.add]
    dscal = [[int(v) for v in row] for row in ma.scal]
    dbr = [[[int(v) for v in cell] for cell in row] for row in ma.bracket]
    nadd = [[int(v) for v in row] for row in nb.group.add]
    nneg = [int(v) for v in nb.group.neg]
    nscal = [[int(v) for v in row] for row in nb.scal]
    nbr = [[[int(v) for v in cell] for cell in row] for row in nb.bracket]
    mul = [[int(v) for v in row] for row in ma.sr.re.mul]
    f = [int(v) for v in table]
    nm = len(f)
    ne = len(dscal[0]) if nm else 0
    nee = len(dbr[0][0]) if nm else 0
    ain = set(int(a) for a in ma.aset)
    bin_ = set(int(b) for b in nb.aset)

    def sub(a: int, b: int) -> int:
        return nadd[a][nneg[b]]

    def d(m: int, n: int) -> int:
        return sub(sub(f[madd[m][n]], f[n]), f[m])

    def fr(r: int, m: int) -> int:
        return sub(f[dscal[m][r]], nscal[f[m]][r])

    def fx(x: int, m: int, n: int) -> int:
        return sub(f[dbr[m][n][x]], nbr[f[m]][f[n]][x])

    if nm and f[0] != 0:
        return False

    for a in ain:
        if f[a] not in bin_:
            return False

    for m in range(nm):
        for n in range(nm):
            v = d(m, n)
            if v not in bin_:
                return False
            if (m in ain or n in ain) and v != 0:
                return False
            for x in range(nee):
                w = fx(x, m, n)
                if w not in bin_:
                    return False
                if (m in ain or n in ain) and w != 0:
                    return False
        for r in range(ne):
            v = fr(r, m)
            if v not in bin_:
                return False
            if m in ain and v != 0:
                return False

    # additive defect: linear in each slot
    for m in range(nm):
        for m2 in range(nm):
            for n in range(nm):
                if d(madd[m][m2], n) != nadd[d(m, n)][d(m2, n)]:
                    return False
                if d(n, madd[m][m2]) != nadd[d(n, m)][d(n, m2)]:
                    return False
            for r in range(ne):
                if d(dscal[m][r], m2) != nscal[d(m, m2)][r]:
                    return False
                if d(m2, dscal[m][r]) != nscal[d(m2, m)][r]:
                    return False
            for x in range(nee):
                for n in range(nm):
                    if d(dbr[m][m2][x], n) != nbr[d(m, n)][d(m2, n)][x]:
                        return False
                    if d(n, dbr[m][m2][x]) != nbr[d(n, m)][d(n, m2)][x]:
                        return False

    # bracket defects: linear in each slot, for every parameter x
    for x in range(nee):
        for m in range(nm):
            for m2 in range(nm):
                for n in range(nm):
                    if fx(x, madd[m][m2], n) != nadd[fx(x, m, n)][fx(x, m2, n)]:
                        return False
                    if fx(x, n, madd[m][m2]) != nadd[fx(x, n, m)][fx(x, n, m2)]:
                        return False
                for r in range(ne):
                    if fx(x, dscal[m][r], m2) != nscal[fx(x, m, m2)][r]:
                        return False
                    if fx(x, m2, dscal[m][r]) != nscal[fx(x, m2, m)][r]:
                        return False
                for y in range(nee):
                    for n in range(nm):
                        if fx(x, dbr[m][m2][y], n) != nbr[fx(x, m, n)][fx(x, m2, n)][y]:
                            return False
                        if fx(x, n, dbr[m][m2][y]) != nbr[fx(x, n, m)][fx(x, n, m2)][y]:
                            return False

    # scalar defects: f_(r)(m·s) = f_(r)(m)·s²
    for r in range(ne):
        for m in range(nm):
            for s in range(ne):
                if fr(r, dscal[m][s]) != nscal[fr(r, m)][mul[s][s]]:
                    return False

    return True
