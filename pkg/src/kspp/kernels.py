"""Hot inner loops.

Every function here is compiled with numba when available (see
:mod:`kspp._accel`) and otherwise runs as plain Python over numpy arrays.
Vertex sets are int64 bitmasks, so anything touching them needs n <= 62;
callers enforce the much smaller oracle caps.
"""
import numpy as np

from ._accel import jit


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def lowbit_index(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@jit
def count_components(adj, n, removed):
    """Number of connected components of the graph minus the ``removed`` mask."""
    full = (np.int64(1) << n) - 1
    remaining = full & ~removed
    count = 0
    while remaining:
        low = remaining & -remaining
        remaining ^= low
        frontier = low
        while frontier:
            reach = np.int64(0)
            f = frontier
            while f:
                b = f & -f
                reach |= adj[lowbit_index(b)]
                f ^= b
            frontier = reach & remaining
            remaining &= ~frontier
        count += 1
    return count


@jit
def _subset_sums(values, lo, count):
    # table[mask] = sum of values[lo + i] over the bits i of mask
    table = np.zeros(np.int64(1) << count, dtype=np.int64)
    for mask in range(1, np.int64(1) << count):
        b = mask & -mask
        table[mask] = table[mask ^ b] + values[lo + lowbit_index(b)]
    return table


@jit
def condition_sweep(adj, deg, n, k):
    """First S (by size, then mask value) with c(G-S) > sum deg(S) - k|S| + 1.

    Returns ``(found, mask, components, bound)``.  Subsets whose bound already
    reaches n - |S| cannot fail and are skipped without a component count;
    degree sums come from two half-width lookup tables.
    """
    half = n // 2
    lo_sums = _subset_sums(deg, 0, half)
    hi_sums = _subset_sums(deg, half, n - half)
    lo_mask = (np.int64(1) << half) - 1
    full = (np.int64(1) << n) - 1
    for size in range(n + 1):
        mask = (np.int64(1) << size) - 1
        while mask <= full:
            bound = lo_sums[mask & lo_mask] + hi_sums[mask >> half] - k * size + 1
            if bound < n - size:
                c = count_components(adj, n, mask)
                if c > bound:
                    return True, mask, c, bound
            if size == 0:
                break
            low = mask & -mask
            ripple = mask + low
            mask = (((ripple ^ mask) >> 2) // low) | ripple
    return False, np.int64(-1), 0, 0


@jit
def _toggle_status(deg, w, step, k):
    # change in the number of "bad" vertices (even degree below k) when deg[w] += step
    d = deg[w]
    was_bad = 1 if (d % 2 == 0 and d < k) else 0
    d += step
    deg[w] = d
    now_bad = 1 if (d % 2 == 0 and d < k) else 0
    return now_bad - was_bad


@jit
def definition_sweep(eu, ev, n, k):
    """Mark every odd-vertex set O(F) realised by some valid edge subset F.

    F is valid when each vertex of even F-degree has F-degree >= k.  Edge
    subsets are visited in Gray-code order so each step toggles one edge and
    the validity count is updated in O(1).  Returns a uint8 table indexed by
    vertex mask.
    """
    m = eu.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    served = np.zeros(np.int64(1) << n, dtype=np.uint8)
    bad = n
    odd = np.int64(0)
    if bad == 0:
        served[0] = 1
    for i in range(1, np.int64(1) << m):
        j = lowbit_index(i)
        gray = i ^ (i >> 1)
        step = 1 if (gray >> j) & 1 else -1
        u = eu[j]
        v = ev[j]
        bad += _toggle_status(deg, u, step, k)
        bad += _toggle_status(deg, v, step, k)
        odd ^= (np.int64(1) << u) | (np.int64(1) << v)
        if bad == 0:
            served[odd] = 1
    return served


@jit
def scan_served(served, n):
    """Return ``(first_unserved_even_mask, served_even_count, odd_served_count)``.

    The first unserved mask is the smallest by size, then by mask value; -1
    when every even-size set is served.
    """
    best_size = n + 1
    best_mask = np.int64(-1)
    served_even = 0
    odd_served = 0
    for x in range(np.int64(1) << n):
        size = popcount(x)
        if size % 2 == 1:
            if served[x]:
                odd_served += 1
        elif served[x]:
            served_even += 1
        elif size < best_size:
            best_size = size
            best_mask = x
    return best_mask, served_even, odd_served


@jit
def factor_search(eu, ev, n, xmask, k):
    """Smallest edge-subset mask F with odd degree exactly on ``xmask`` and
    every other vertex at even degree >= k, or -1."""
    m = eu.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for f in range(np.int64(1) << m):
        deg[:] = 0
        rest = f
        while rest:
            b = rest & -rest
            j = lowbit_index(b)
            deg[eu[j]] += 1
            deg[ev[j]] += 1
            rest ^= b
        ok = True
        for w in range(n):
            d = deg[w]
            if (xmask >> w) & 1:
                if d % 2 == 0:
                    ok = False
                    break
            elif d % 2 == 1 or d < k:
                ok = False
                break
        if ok:
            return f
    return np.int64(-1)


@jit
def connected_edge_masks(n, eu, ev):
    """All edge masks over the pair list (eu, ev) whose graph on n vertices is
    connected, ascending."""
    m = eu.shape[0]
    total = np.int64(1) << m
    out = np.empty(total, dtype=np.int64)
    adj = np.zeros(n, dtype=np.int64)
    found = 0
    for mask in range(total):
        adj[:] = 0
        rest = mask
        while rest:
            b = rest & -rest
            j = lowbit_index(b)
            adj[eu[j]] |= np.int64(1) << ev[j]
            adj[ev[j]] |= np.int64(1) << eu[j]
            rest ^= b
        if count_components(adj, n, np.int64(0)) == 1:
            out[found] = mask
            found += 1
    return out[:found]


@jit
def power_iteration(mat, shift, tol, max_iter):
    """Largest eigenvalue of a symmetric nonnegative matrix.

    Iterates on ``mat + shift*I`` from the normalised all-ones vector and
    reports the Rayleigh quotient of ``mat`` itself.  Returns
    ``(value, residual_inf, iterations, converged)``.
    """
    n = mat.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    y = np.zeros(n)
    theta = 0.0
    resid = np.inf
    for it in range(1, max_iter + 1):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += mat[i, j] * x[j]
            y[i] = acc
        theta = 0.0
        for i in range(n):
            theta += x[i] * y[i]
        resid = 0.0
        for i in range(n):
            r = abs(y[i] - theta * x[i])
            if r > resid:
                resid = r
        if resid <= tol * max(1.0, theta):
            return theta, resid, it, True
        norm = 0.0
        for i in range(n):
            y[i] += shift * x[i]
            norm += y[i] * y[i]
        norm = np.sqrt(norm)
        for i in range(n):
            x[i] = y[i] / norm
    return theta, resid, max_iter, False
