"""Pure-Python fallback for the compiled elimination kernel."""


def rref_modp(A, p):
    """Reduce ``A`` (int64 array, entries in ``[0, p)``) to RREF in place.

    Returns ``(rank, pivot_columns)``.
    """
    rows = A.tolist()
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], -1, p)
        if inv != 1:
            prow = rows[r] = [v * inv % p for v in prow]
        nz = [j for j in range(c, n) if prow[j]]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    if m:
        A[:, :] = rows
    return r, pivots
