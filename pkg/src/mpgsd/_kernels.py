"""Array kernels for solution construction and local-search correction.

All kernels take the CSR adjacency (``indptr``, ``indices``), vertex
``values``, ``supply_idx`` (subgraph -> supply vertex) and an ``assign``
array over all vertices (-1 for unassigned demand vertices, the subgraph
index otherwise).  Randomness is passed in as pre-drawn uniforms so that
compiled and interpreted runs agree bit for bit.
"""
import numpy as np

from ._jit import kernel


@kernel
def select_index(weights, q, q0, u):
    """Pick a position in ``weights`` with the pseudo-random-proportional rule.

    ``q > q0`` takes the argmax (first position on ties); otherwise a
    roulette draw with uniform ``u``.  A non-positive total falls back to a
    uniform pick.
    """
    k = weights.shape[0]
    if q > q0:
        best = 0
        for j in range(1, k):
            if weights[j] > weights[best]:
                best = j
        return best
    total = 0.0
    for j in range(k):
        total += weights[j]
    if not total > 0.0:
        j = int(u * k)
        return j if j < k else k - 1
    r = u * total
    acc = 0.0
    for j in range(k):
        acc += weights[j]
        if r < acc:
            return j
    return k - 1


@kernel
def initial_assignment(n_vertices, supply_idx):
    assign = np.full(n_vertices, -1, dtype=np.int64)
    for i in range(supply_idx.shape[0]):
        assign[supply_idx[i]] = i
    return assign


@kernel
def grow(indptr, indices, values, supply_idx, tau, rand, q0, greedy):
    """Build one maximal solution by repeated subgraph expansion.

    ``greedy`` selects the subgraph with the largest surplus and the vertex
    with the largest demand (lowest index on ties) and ignores ``tau`` and
    ``rand``.  Otherwise step ``k`` uses ``rand[k, 0]`` for the uniform
    subgraph pick, ``rand[k, 1]`` as ``q`` and ``rand[k, 2]`` for the
    roulette.  Returns the assignment array.
    """
    nv = values.shape[0]
    n = supply_idx.shape[0]
    assign = initial_assignment(nv, supply_idx)
    surplus = np.empty(n, dtype=np.int64)
    for i in range(n):
        surplus[i] = values[supply_idx[i]]

    # frontier lists may hold stale (already assigned) vertices
    front = np.empty((n, nv), dtype=np.int64)
    flen = np.zeros(n, dtype=np.int64)
    infront = np.zeros((n, nv), dtype=np.bool_)
    for i in range(n):
        sv = supply_idx[i]
        for e in range(indptr[sv], indptr[sv + 1]):
            w = indices[e]
            if values[w] < 0 and not infront[i, w]:
                infront[i, w] = True
                front[i, flen[i]] = w
                flen[i] += 1

    expandable = np.zeros(n, dtype=np.bool_)
    dirty = np.ones(n, dtype=np.bool_)
    exp_list = np.empty(n, dtype=np.int64)
    cand = np.empty(nv, dtype=np.int64)
    weights = np.empty(nv, dtype=np.float64)
    step = 0

    while True:
        cnt = 0
        for i in range(n):
            if dirty[i]:
                keep = 0
                fits = False
                for j in range(flen[i]):
                    w = front[i, j]
                    if assign[w] == -1:
                        front[i, keep] = w
                        keep += 1
                        if -values[w] <= surplus[i]:
                            fits = True
                flen[i] = keep
                expandable[i] = fits
                dirty[i] = False
            if expandable[i]:
                exp_list[cnt] = i
                cnt += 1
        if cnt == 0:
            break

        if greedy:
            s = exp_list[0]
            for j in range(1, cnt):
                if surplus[exp_list[j]] > surplus[s]:
                    s = exp_list[j]
        else:
            j = int(rand[step, 0] * cnt)
            s = exp_list[j if j < cnt else cnt - 1]

        k = 0
        for j in range(flen[s]):
            w = front[s, j]
            if -values[w] <= surplus[s]:
                cand[k] = w
                k += 1

        if greedy:
            v = cand[0]
            for j in range(1, k):
                c = cand[j]
                if values[c] < values[v] or (values[c] == values[v] and c < v):
                    v = c
        else:
            for j in range(k):
                weights[j] = tau[cand[j], s] * (-values[cand[j]])
            # argmax ties resolve to the lowest vertex index
            q = rand[step, 1]
            if q > q0:
                v = cand[0]
                bw = weights[0]
                for j in range(1, k):
                    if weights[j] > bw or (weights[j] == bw and cand[j] < v):
                        v = cand[j]
                        bw = weights[j]
            else:
                v = cand[select_index(weights[:k], q, q0, rand[step, 2])]

        assign[v] = s
        surplus[s] += values[v]
        for i in range(n):
            if infront[i, v]:
                dirty[i] = True
        dirty[s] = True
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if values[w] < 0 and assign[w] == -1 and not infront[s, w]:
                infront[s, w] = True
                front[s, flen[s]] = w
                flen[s] += 1
        step += 1
    return assign


# ---------------------------------------------------------------------------
# correction (first-improvement local search)

MOVE_INSERT = 1
MOVE_TRANSFER = 2
MOVE_SWAP = 3


@kernel
def _connected(s, root, assign, size, indptr, indices, stamp, mark, stack):
    """Whether the vertices labelled ``s`` form one component containing ``root``."""
    mark[root] = stamp
    stack[0] = root
    top = 1
    reached = 1
    while top > 0:
        top -= 1
        x = stack[top]
        for e in range(indptr[x], indptr[x + 1]):
            w = indices[e]
            if assign[w] == s and mark[w] != stamp:
                mark[w] = stamp
                stack[top] = w
                top += 1
                reached += 1
    return reached == size


@kernel
def _best_insert(x, y, assign, surplus, values, unassigned, n_un, indptr, indices):
    """Largest unassigned vertex insertable into subgraph ``x`` or ``y``.

    Returns (vertex, subgraph) or (-1, -1).  Ties go to the lowest vertex
    index; ``x`` is preferred over ``y`` for the same vertex.
    """
    best_u = -1
    best_t = -1
    best_d = 0
    for j in range(n_un):
        u = unassigned[j]
        du = -values[u]
        if du < best_d or (du == best_d and best_u != -1 and u > best_u):
            continue
        fit_x = du <= surplus[x]
        fit_y = y >= 0 and du <= surplus[y]
        if not fit_x and not fit_y:
            continue
        hit = -1
        for e in range(indptr[u], indptr[u + 1]):
            a = assign[indices[e]]
            if a == x and fit_x:
                hit = x
                break
            if a == y and fit_y:
                hit = y
        if hit != -1:
            best_u = u
            best_t = hit
            best_d = du
    return best_u, best_t


@kernel
def correct_inplace(indptr, indices, values, supply_idx, assign):
    """Hill-climb ``assign`` over insert, transfer and swap moves.

    Scans moves in the order insert, transfer, swap and restarts after every
    accepted move.  Transfers and swaps are accepted only together with the
    best insert they enable.  Returns the total objective gain.
    """
    nv = values.shape[0]
    n = supply_idx.shape[0]
    surplus = np.zeros(n, dtype=np.int64)
    size = np.zeros(n, dtype=np.int64)
    for v in range(nv):
        if assign[v] >= 0:
            surplus[assign[v]] += values[v]
            size[assign[v]] += 1

    mark = np.zeros(nv, dtype=np.int64)
    tried = np.full(nv, -1, dtype=np.int64)
    stack = np.empty(nv, dtype=np.int64)
    unassigned = np.empty(nv, dtype=np.int64)
    mem_ptr = np.zeros(n + 1, dtype=np.int64)
    members = np.empty(nv, dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    stamp = 0
    gain = 0

    while True:
        n_un = 0
        min_un = -1
        for v in range(nv):
            if assign[v] == -1:
                unassigned[n_un] = v
                n_un += 1
                if min_un == -1 or -values[v] < min_un:
                    min_un = -values[v]
        if n_un == 0:
            break

        # M1: insert
        done = False
        for j in range(n_un):
            u = unassigned[j]
            du = -values[u]
            for e in range(indptr[u], indptr[u + 1]):
                t = assign[indices[e]]
                if t >= 0 and du <= surplus[t]:
                    assign[u] = t
                    surplus[t] -= du
                    size[t] += 1
                    gain += du
                    done = True
                    break
            if done:
                break
        if done:
            continue

        # M2: transfer v from s to t, then insert
        for v in range(nv):
            s = assign[v]
            if s < 0 or values[v] > 0:
                continue
            dv = -values[v]
            removable = -1  # unknown
            for e in range(indptr[v], indptr[v + 1]):
                t = assign[indices[e]]
                if t < 0 or t == s or tried[t] == v or dv > surplus[t]:
                    continue
                tried[t] = v
                if min_un > surplus[s] + dv and min_un > surplus[t] - dv:
                    continue
                if removable == -1:
                    assign[v] = -2
                    stamp += 1
                    ok = _connected(s, supply_idx[s], assign, size[s] - 1,
                                    indptr, indices, stamp, mark, stack)
                    assign[v] = s
                    removable = 1 if ok else 0
                if removable == 0:
                    break
                assign[v] = t
                surplus[s] += dv
                surplus[t] -= dv
                u, x = _best_insert(s, t, assign, surplus, values, unassigned, n_un,
                                    indptr, indices)
                if u >= 0:
                    size[s] -= 1
                    size[t] += 1
                    assign[u] = x
                    surplus[x] += values[u]
                    size[x] += 1
                    gain += -values[u]
                    done = True
                    break
                assign[v] = s
                surplus[s] -= dv
                surplus[t] += dv
            if done:
                break
        for i in range(n):
            tried[i] = -1
        if done:
            continue

        # M3: swap a (in s) with b (in t), then insert
        mem_ptr[0] = 0
        for i in range(n):
            mem_ptr[i + 1] = mem_ptr[i] + size[i]
            fill[i] = mem_ptr[i]
        for v in range(nv):
            if assign[v] >= 0:
                members[fill[assign[v]]] = v
                fill[assign[v]] += 1
        seen_b = np.full(nv, -1, dtype=np.int64)
        key = 0
        for a in range(nv):
            s = assign[a]
            if s < 0 or values[a] > 0:
                continue
            da = -values[a]
            for e in range(indptr[a], indptr[a + 1]):
                t = assign[indices[e]]
                if t < 0 or t == s or tried[t] == a:
                    continue
                tried[t] = a
                key += 1
                for m in range(mem_ptr[s], mem_ptr[s + 1]):
                    xv = members[m]
                    if xv == a:
                        continue
                    for f in range(indptr[xv], indptr[xv + 1]):
                        b = indices[f]
                        if assign[b] != t or values[b] > 0 or seen_b[b] == key:
                            continue
                        seen_b[b] = key
                        db = -values[b]
                        ns = surplus[s] + da - db
                        nt = surplus[t] + db - da
                        if ns < 0 or nt < 0:
                            continue
                        if min_un > ns and min_un > nt:
                            continue
                        assign[a] = t
                        assign[b] = s
                        stamp += 1
                        ok = _connected(s, supply_idx[s], assign, size[s],
                                        indptr, indices, stamp, mark, stack)
                        if ok:
                            stamp += 1
                            ok = _connected(t, supply_idx[t], assign, size[t],
                                            indptr, indices, stamp, mark, stack)
                        if ok:
                            surplus[s] = ns
                            surplus[t] = nt
                            u, x = _best_insert(s, t, assign, surplus, values,
                                                unassigned, n_un, indptr, indices)
                            if u >= 0:
                                assign[u] = x
                                surplus[x] += values[u]
                                size[x] += 1
                                gain += -values[u]
                                done = True
                                break
                            surplus[s] -= da - db
                            surplus[t] -= db - da
                        assign[a] = s
                        assign[b] = t
                    if done:
                        break
                if done:
                    break
            if done:
                break
        for i in range(n):
            tried[i] = -1
        if not done:
            break
    return gain
