"""Pure-Python modular elimination kernels.

Reference implementation for the compiled ``_kernels`` extension; both
expose the same functions with the same results.
"""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over F_p.

    ``rows`` is a list of integer lists (not modified).  Returns
    ``(R, pivots)`` where ``R`` holds only the nonzero rows, each reduced
    into ``[0, p)`` with leading coefficient 1.
    """
    A = [[x % p for x in row] for row in rows]
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(m):
            if i != r:
                f = A[i][c]
                if f:
                    other = A[i]
                    for j in range(c, ncols):
                        if row[j]:
                            other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(rows, ncols, p):
    """Rank over F_p via forward elimination only."""
    A = [[x % p for x in row] for row in rows]
    m = len(A)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        row = A[r]
        inv = pow(row[c], -1, p)
        for i in range(r + 1, m):
            f = A[i][c]
            if f:
                f = f * inv % p
                other = A[i]
                for j in range(c, ncols):
                    if row[j]:
                        other[j] = (other[j] - f * row[j]) % p
        r += 1
    return r


def matmul_mod_p(A, B, p):
    """Product of two integer matrices reduced mod p."""
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append([x % p for x in acc])
    return out
