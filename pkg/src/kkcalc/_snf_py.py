"""Pure-Python Smith normal form kernel on Python ints (never overflows).

This is the reference implementation; the compiled kernel in ``_snf_ext``
performs the identical sequence of elementary operations on int64 and
gives up (``OverflowError``) as soon as any intermediate leaves that range.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _nearest_quotient(a, b):
    # remainder of least absolute value; ties keep the floor quotient
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def snf_kernel(a, m, n):
    """Diagonalize the ``m x n`` matrix ``a`` (list of row lists).

    Returns ``(U, D, V, Uinv, Vinv)`` as lists of lists with ``U a V = D``,
    ``D`` diagonal, ``d_1 | d_2 | ...`` nonnegative, zeros last.
    The input is not modified.
    """
    D = [list(row) for row in a]
    U, Ui = _identity(m), _identity(m)
    V, Vi = _identity(n), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rd, rs = D[dst], D[src]
        for k in range(n):
            rd[k] += q * rs[k]
        ud, us = U[dst], U[src]
        for k in range(m):
            ud[k] += q * us[k]
        for row in Ui:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        vs, vd = Vi[src], Vi[dst]
        for k in range(n):
            vs[k] -= q * vd[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)

        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -_nearest_quotient(D[i][t], p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -_nearest_quotient(D[t][j], p))

            best = None
            for i in range(t + 1, m):
                x = D[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, -1)
            for j in range(t + 1, n):
                x = D[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), -1, j)
            if best is not None:
                _, i, j = best
                if i >= 0:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue

            bad = -1
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                add_row(t, bad, 1)
                continue
            break

        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
        t += 1

    return U, D, V, Ui, Vi
