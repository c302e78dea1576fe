// The zoo table: ids, tasks, runners and the pseudocode shown to text
// baselines, plus the four-type pair registry.

#include <algorithm>

#include "pstraj/error.hpp"
#include "pstraj/zoo/optimizers.hpp"
#include "pstraj/zoo/tsp.hpp"
#include "pstraj/zoo/zoo.hpp"

namespace pstraj::zoo {

namespace {

std::uint32_t node_start(const StartPoint& s) {
  if (const auto* i = std::get_if<std::uint32_t>(&s.value)) return *i;
  throw Error(Errc::BadStart, "start '" + s.id + "' is not a node index");
}

template <class Data>
const Data& data_of(const ProblemInstance& inst) {
  if (const auto* d = std::get_if<Data>(&inst.data)) return *d;
  throw Error(Errc::TaskMismatch, "instance '" + inst.id + "' carries data for another task");
}

Runner sort_runner(std::vector<Solution> (*fn)(std::vector<std::uint32_t>)) {
  return [fn](const ProblemInstance& inst, const StartPoint&, std::uint64_t) { return fn(data_of<SortData>(inst).values); };
}

Runner tree_runner(std::function<std::vector<Solution>(const TreeData&, std::uint32_t)> fn) {
  return [fn = std::move(fn)](const ProblemInstance& inst, const StartPoint& s, std::uint64_t) {
    return fn(data_of<TreeData>(inst), node_start(s));
  };
}

Runner graph_runner(std::function<std::vector<Solution>(const GraphData&, std::uint32_t)> fn) {
  return [fn = std::move(fn)](const ProblemInstance& inst, const StartPoint& s, std::uint64_t) {
    return fn(data_of<GraphData>(inst), node_start(s));
  };
}

Runner packing_runner(std::function<std::vector<Solution>(const BinPackingData&)> fn) {
  return [fn = std::move(fn)](const ProblemInstance& inst, const StartPoint&, std::uint64_t) {
    return fn(data_of<BinPackingData>(inst));
  };
}

Runner matmul_runner(LoopOrder order) {
  return [order](const ProblemInstance& inst, const StartPoint&, std::uint64_t) {
    return matmul(data_of<MatMulData>(inst), order);
  };
}

Runner tsp_runner(Pick pick) {
  return [pick](const ProblemInstance& inst, const StartPoint& s, std::uint64_t) {
    return tsp_greedy_neighbor(data_of<TspData>(inst).dist, node_start(s), pick);
  };
}

Runner optimizer_runner(std::string id) {
  return [id = std::move(id)](const ProblemInstance& inst, const StartPoint& s, std::uint64_t seed) {
    const auto& box = data_of<RosenbrockData>(inst);
    const auto* p = std::get_if<std::vector<double>>(&s.value);
    if (p == nullptr || p->size() != 2) throw Error(Errc::BadStart, "start '" + s.id + "' is not a 2-d point");
    OptimizerOptions opts;
    opts.steps = box.steps;
    return run_optimizer(id, {(*p)[0], (*p)[1]}, opts, seed).steps;
  };
}

// ---------------------------------------------------------------------------
// Pseudocode

constexpr const char* kBubbleSort = R"(def bubble_sort(a):
    n = len(a)
    while n > 1:
        swapped = False
        for j in range(n - 1):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                record(a)
                swapped = True
        if not swapped:
            break
        n = n - 1
    return a
)";

constexpr const char* kBubbleSortRecursive = R"(def bubble_sort_recursive(a, n=None):
    if n is None:
        n = len(a)
    if n <= 1:
        return a
    changed = False
    for idx in range(n - 1):
        if a[idx + 1] < a[idx]:
            a[idx + 1], a[idx] = a[idx], a[idx + 1]
            record(a)
            changed = True
    if changed:
        bubble_sort_recursive(a, n - 1)
    return a
)";

constexpr const char* kInsertionSort = R"(def insertion_sort(a):
    for i in range(1, len(a)):
        key = a[i]
        j = i
        while j > 0 and a[j - 1] > key:
            a[j] = a[j - 1]
            j -= 1
        a[j] = key
        if j != i:
            record(a)
    return a
)";

constexpr const char* kInsertionSortRecursive = R"(def insertion_sort_recursive(a, n=None):
    if n is None:
        n = len(a)
    if n <= 1:
        return a
    insertion_sort_recursive(a, n - 1)
    last = a[n - 1]
    pos = n - 1
    while pos > 0 and last < a[pos - 1]:
        a[pos] = a[pos - 1]
        pos = pos - 1
    a[pos] = last
    if pos < n - 1:
        record(a)
    return a
)";

constexpr const char* kSelectionSort = R"(def selection_sort(a):
    for i in range(len(a) - 1):
        smallest = i
        for j in range(i + 1, len(a)):
            if a[j] < a[smallest]:
                smallest = j
        if smallest != i:
            a[i], a[smallest] = a[smallest], a[i]
            record(a)
    return a
)";

constexpr const char* kMergeSort = R"(def merge_sort(a, lo=0, hi=None):
    if hi is None:
        hi = len(a)
    if hi - lo <= 1:
        return a
    mid = (lo + hi) // 2
    merge_sort(a, lo, mid)
    merge_sort(a, mid, hi)
    left = a[lo:mid]
    right = a[mid:hi]
    merged = []
    while left and right:
        merged.append(left.pop(0) if left[0] <= right[0] else right.pop(0))
    merged.extend(left + right)
    a[lo:hi] = merged
    record(a)
    return a
)";

constexpr const char* kMergeSortBuffered = R"(def merge_sort_buffered(a):
    buf = [0] * len(a)
    def sort(lo, hi):
        if hi - lo < 2:
            return
        mid = lo + (hi - lo) // 2
        sort(lo, mid)
        sort(mid, hi)
        i, j, k = lo, mid, lo
        while i < mid and j < hi:
            if a[j] < a[i]:
                buf[k] = a[j]
                j += 1
            else:
                buf[k] = a[i]
                i += 1
            k += 1
        buf[k:hi] = a[i:mid] + a[j:hi]
        a[lo:hi] = buf[lo:hi]
        record(a)
    sort(0, len(a))
    return a
)";

constexpr const char* kQuickSort = R"(def quick_sort(a, lo=0, hi=None):
    if hi is None:
        hi = len(a) - 1
    if lo >= hi:
        return a
    pivot = a[hi]
    i = lo
    for j in range(lo, hi):
        if a[j] < pivot:
            if i != j:
                a[i], a[j] = a[j], a[i]
                record(a)
            i += 1
    if i != hi:
        a[i], a[hi] = a[hi], a[i]
        record(a)
    quick_sort(a, lo, i - 1)
    quick_sort(a, i + 1, hi)
    return a
)";

constexpr const char* kHeapSort = R"(def heap_sort(a):
    def sift_down(root, end):
        while 2 * root + 1 < end:
            child = 2 * root + 1
            if child + 1 < end and a[child] < a[child + 1]:
                child += 1
            if a[root] >= a[child]:
                return
            a[root], a[child] = a[child], a[root]
            record(a)
            root = child
    n = len(a)
    for start in range(n // 2 - 1, -1, -1):
        sift_down(start, n)
    for end in range(n - 1, 0, -1):
        a[0], a[end] = a[end], a[0]
        record(a)
        sift_down(0, end)
    return a
)";

constexpr const char* kBfsLeft = R"(def bfs_left(tree, root):
    visited = []
    queue = deque([root])
    while queue:
        node = queue.popleft()
        visited.append(node)
        record(visited)
        for child in (tree.left[node], tree.right[node]):
            if child is not None:
                queue.append(child)
    return visited
)";

constexpr const char* kBfsRight = R"(def bfs_right(tree, root):
    visited = []
    queue = deque([root])
    while queue:
        node = queue.popleft()
        visited.append(node)
        record(visited)
        for child in (tree.right[node], tree.left[node]):
            if child is not None:
                queue.append(child)
    return visited
)";

constexpr const char* kBfsIterative = R"(def bfs_iterative(tree, root):
    order = []
    frontier = deque()
    frontier.append(root)
    while len(frontier) > 0:
        current = frontier.popleft()
        order.append(current)
        record(order)
        frontier.extend(tree.children(current))
    return order
)";

constexpr const char* kBfsRecursive = R"(def bfs_recursive(tree, level, seen=None):
    if seen is None:
        seen = []
    if not level:
        return seen
    next_level = []
    for node in level:
        seen.append(node)
        record(seen)
        next_level += tree.children(node)
    return bfs_recursive(tree, next_level, seen)
)";

constexpr const char* kDfsLeft = R"(def dfs_left(tree, root):
    visited = []
    stack = [root]
    while stack:
        node = stack.pop()
        visited.append(node)
        record(visited)
        for child in reversed((tree.left[node], tree.right[node])):
            if child is not None:
                stack.append(child)
    return visited
)";

constexpr const char* kDfsRight = R"(def dfs_right(tree, root):
    visited = []
    stack = [root]
    while stack:
        node = stack.pop()
        visited.append(node)
        record(visited)
        for child in reversed((tree.right[node], tree.left[node])):
            if child is not None:
                stack.append(child)
    return visited
)";

constexpr const char* kDfsIterative = R"(def dfs_iterative(tree, root):
    order = []
    pending = [root]
    while len(pending) > 0:
        current = pending.pop()
        order.append(current)
        record(order)
        pending.extend(reversed(tree.children(current)))
    return order
)";

constexpr const char* kDfsRecursive = R"(def dfs_recursive(tree, node, seen=None):
    if seen is None:
        seen = []
    if node is None:
        return seen
    seen.append(node)
    record(seen)
    dfs_recursive(tree, tree.left[node], seen)
    dfs_recursive(tree, tree.right[node], seen)
    return seen
)";

constexpr const char* kGraphGreedyMin = R"(def graph_greedy_min(graph, start):
    visited = [start]
    record(visited)
    path = [start]
    while path:
        node = path[-1]
        options = [v for v in sorted(graph.neighbors(node)) if v not in visited]
        if not options:
            path.pop()
            continue
        nxt = min(options, key=lambda v: graph.weight(node, v))
        visited.append(nxt)
        record(visited)
        path.append(nxt)
    return visited
)";

constexpr const char* kGraphGreedyMax = R"(def graph_greedy_max(graph, start):
    visited = [start]
    record(visited)
    path = [start]
    while path:
        node = path[-1]
        options = [v for v in sorted(graph.neighbors(node)) if v not in visited]
        if not options:
            path.pop()
            continue
        nxt = max(options, key=lambda v: graph.weight(node, v))
        visited.append(nxt)
        record(visited)
        path.append(nxt)
    return visited
)";

constexpr const char* kDijkstra = R"(def dijkstra(graph, source):
    dist = [UNREACHED] * graph.n
    dist[source] = 0
    settled = set()
    record(dist)
    while len(settled) < graph.n:
        u = min((v for v in range(graph.n) if v not in settled), key=lambda v: dist[v])
        if dist[u] == UNREACHED:
            break
        settled.add(u)
        for v, w in graph.neighbors(u):
            if v not in settled and dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
        record(dist)
    return dist
)";

constexpr const char* kBellmanFord = R"(def bellman_ford(graph, source):
    dist = [UNREACHED] * graph.n
    dist[source] = 0
    record(dist)
    for _ in range(graph.n - 1):
        changed = False
        for u, v, w in graph.edges:
            for a, b in ((u, v), (v, u)):
                if dist[a] != UNREACHED and dist[a] + w < dist[b]:
                    dist[b] = dist[a] + w
                    changed = True
        if not changed:
            break
        record(dist)
    return dist
)";

constexpr const char* kFloydSlice = R"(def floyd_slice(graph, source):
    d = graph.weight_matrix(missing=UNREACHED)
    record(d[source])
    for k in range(graph.n):
        for i in range(graph.n):
            for j in range(graph.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
        record(d[source])
    return d[source]
)";

constexpr const char* kFirstFit = R"(def first_fit(items, capacity):
    loads = []
    assignment = []
    for item in items:
        b = 0
        while b < len(loads) and loads[b] + item > capacity:
            b += 1
        if b == len(loads):
            loads.append(0)
        loads[b] += item
        assignment.append(b)
        record(assignment)
    return assignment
)";

constexpr const char* kFirstFitAlt = R"(def first_fit_alt(items, capacity):
    bins = []
    labels = []
    for size in items:
        target = next((i for i, used in enumerate(bins) if capacity - used >= size), None)
        if target is None:
            target = len(bins)
            bins.append(0)
        bins[target] = bins[target] + size
        labels.append(target)
        record(labels)
    return labels
)";

constexpr const char* kBestFit = R"(def best_fit(items, capacity):
    loads = []
    assignment = []
    for item in items:
        best, tightest = None, None
        for b in range(len(loads)):
            left = capacity - loads[b] - item
            if left >= 0 and (best is None or left < tightest):
                best, tightest = b, left
        if best is None:
            best = len(loads)
            loads.append(0)
        loads[best] += item
        assignment.append(best)
        record(assignment)
    return assignment
)";

constexpr const char* kBestFitAlt = R"(def best_fit_alt(items, capacity):
    bins = []
    labels = []
    for size in items:
        ranked = sorted(range(len(bins)), key=lambda i: -bins[i])
        fits = [i for i in ranked if bins[i] + size <= capacity]
        target = fits[0] if fits else len(bins)
        if target == len(bins):
            bins.append(0)
        bins[target] = bins[target] + size
        labels.append(target)
        record(labels)
    return labels
)";

std::string binpack_param_text(char which, const char* w1, const char* w2) {
  std::string s = "def binpack_param_";
  s += which;
  s += R"((items, capacity):
    w1 = )";
  s += w1;
  s += R"(
    w2 = )";
  s += w2;
  s += R"(
    loads = []
    counts = []
    assignment = []
    for item in items:
        best, best_score = None, None
        for b in range(len(loads)):
            leftover = capacity - loads[b] - item
            if leftover < 0:
                continue
            fullness = counts[b] / (counts[b] + 1)
            score = -w1 * leftover / capacity + w2 * fullness
            if best is None or score > best_score:
                best, best_score = b, score
        if best is None:
            best = len(loads)
            loads.append(0)
            counts.append(0)
        loads[best] += item
        counts[best] += 1
        assignment.append(best)
        record(assignment)
    return assignment
)";
  return s;
}

constexpr const char* kMatmulIjk = R"(def matmul_ijk(A, B):
    n = len(A)
    m = len(B[0])
    p = len(B)
    C = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            total = 0
            for k in range(p):
                total += A[i][k] * B[k][j]
            C[i][j] = total
            record(flatten(C))
    return C
)";

constexpr const char* kMatmulJik = R"(def matmul_jik(A, B):
    n = len(A)
    m = len(B[0])
    p = len(B)
    C = [[0] * m for _ in range(n)]
    for j in range(m):
        for i in range(n):
            total = 0
            for k in range(p):
                total += A[i][k] * B[k][j]
            C[i][j] = total
            record(flatten(C))
    return C
)";

constexpr const char* kTspNearest = R"(def tsp_nearest_neighbor(dist, start):
    route = [start]
    record(route)
    unvisited = [c for c in range(len(dist)) if c != start]
    current = start
    while unvisited:
        nxt = min(unvisited, key=lambda c: dist[current][c])
        unvisited.remove(nxt)
        route.append(nxt)
        record(route)
        current = nxt
    return route
)";

constexpr const char* kTspFarthest = R"(def tsp_farthest_neighbor(dist, start):
    route = [start]
    record(route)
    unvisited = [c for c in range(len(dist)) if c != start]
    current = start
    while unvisited:
        nxt = max(unvisited, key=lambda c: dist[current][c])
        unvisited.remove(nxt)
        route.append(nxt)
        record(route)
        current = nxt
    return route
)";

constexpr const char* kSgd = R"(def sgd(f, x, steps, lr=0.001):
    record(x)
    for t in range(steps):
        g = grad(f, x)
        if norm(g) < 1e-8:
            break
        x = x - lr * g
        record(x)
    return x
)";

constexpr const char* kMomentum = R"(def momentum(f, x, steps, lr=0.001, beta=0.9):
    v = zeros_like(x)
    record(x)
    for t in range(steps):
        g = grad(f, x)
        if norm(g) < 1e-8:
            break
        v = beta * v - lr * g
        x = x + v
        record(x)
    return x
)";

constexpr const char* kAdam = R"(def adam(f, x, steps, lr=0.02, b1=0.9, b2=0.999, eps=1e-8):
    m = zeros_like(x)
    v = zeros_like(x)
    record(x)
    for t in range(1, steps + 1):
        g = grad(f, x)
        if norm(g) < 1e-8:
            break
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        m_hat = m / (1 - b1 ** t)
        v_hat = v / (1 - b2 ** t)
        x = x - lr * m_hat / (sqrt(v_hat) + eps)
        record(x)
    return x
)";

constexpr const char* kCg = R"(def cg(f, x, steps):
    g = grad(f, x)
    d = -g
    record(x)
    for t in range(steps):
        if norm(g) < 1e-8:
            break
        alpha = backtracking(f, x, g, d, c=1e-4, shrink=0.5)
        x = x + alpha * d
        g_new = grad(f, x)
        beta = max(0, dot(g_new, g_new - g) / dot(g, g))
        d = -g_new + beta * d
        if dot(g_new, d) >= 0:
            d = -g_new
        g = g_new
        record(x)
    return x
)";

constexpr const char* kQuasiNewton = R"(def quasi_newton(f, x, steps):
    H = identity(len(x))
    g = grad(f, x)
    record(x)
    for t in range(steps):
        if norm(g) < 1e-8:
            break
        p = -H @ g
        alpha = backtracking(f, x, g, p, c=1e-4, shrink=0.5)
        s = alpha * p
        x = x + s
        g_new = grad(f, x)
        y = g_new - g
        if dot(s, y) > 1e-12:
            if t == 0:
                H = dot(s, y) / dot(y, y) * identity(len(x))
            rho = 1 / dot(s, y)
            V = identity(len(x)) - rho * outer(s, y)
            H = V @ H @ V.T + rho * outer(s, s)
        g = g_new
        record(x)
    return x
)";

constexpr const char* kLbfgs = R"(def lbfgs_like(f, x, steps, memory=5):
    pairs = deque(maxlen=memory)
    g = grad(f, x)
    record(x)
    for t in range(steps):
        if norm(g) < 1e-8:
            break
        q = g
        alphas = []
        for s, y in reversed(pairs):
            a = dot(s, q) / dot(y, s)
            alphas.append(a)
            q = q - a * y
        if pairs:
            s, y = pairs[-1]
            q = dot(s, y) / dot(y, y) * q
        for (s, y), a in zip(pairs, reversed(alphas)):
            b = dot(y, q) / dot(y, s)
            q = q + (a - b) * s
        alpha = weak_wolfe(f, x, g, -q, c1=1e-4, c2=0.9)
        x_new = x - alpha * q
        g_new = grad(f, x_new)
        if dot(x_new - x, g_new - g) > 1e-12:
            pairs.append((x_new - x, g_new - g))
        x, g = x_new, g_new
        record(x)
    return x
)";

constexpr const char* kNelderMead = R"(def nelder_mead(f, x, steps):
    simplex = [x] + [x + 0.05 * x[i] * e(i) if x[i] != 0 else x + 0.00025 * e(i) for i in range(2)]
    alpha, gamma, rho, sigma = 1.0, 2.0, 0.5, 0.5
    record(x)
    for t in range(steps):
        simplex.sort(key=f)
        best, worst = simplex[0], simplex[-1]
        c = mean(simplex[:-1])
        xr = c + alpha * (c - worst)
        if f(xr) < f(best):
            xe = c + gamma * (xr - c)
            simplex[-1] = xe if f(xe) < f(xr) else xr
        elif f(xr) < f(simplex[-2]):
            simplex[-1] = xr
        else:
            xc = c + rho * (xr - c) if f(xr) < f(worst) else c - rho * (c - worst)
            if f(xc) <= min(f(xr), f(worst)):
                simplex[-1] = xc
            else:
                simplex = [best + sigma * (v - best) for v in simplex]
        simplex.sort(key=f)
        record(simplex[0])
        if norm(grad(f, simplex[0])) < 1e-8:
            break
    return simplex[0]
)";

constexpr const char* kNelderMeadAdaptive = R"(def nelder_mead_adaptive(f, x, steps):
    n = len(x)
    simplex = [x] + [x + 0.1 * max(1, abs(x[i])) * e(i) for i in range(n)]
    alpha, gamma, rho, sigma = 1, 1 + 2 / n, 0.75 - 1 / (2 * n), 1 - 1 / n
    record(x)
    for t in range(steps):
        simplex.sort(key=f)
        best, worst = simplex[0], simplex[-1]
        c = mean(simplex[:-1])
        xr = c + alpha * (c - worst)
        if f(xr) < f(best):
            xe = c + gamma * (xr - c)
            simplex[-1] = xe if f(xe) < f(xr) else xr
        elif f(xr) < f(simplex[-2]):
            simplex[-1] = xr
        else:
            xc = c + rho * (xr - c) if f(xr) < f(worst) else c - rho * (c - worst)
            if f(xc) <= min(f(xr), f(worst)):
                simplex[-1] = xc
            else:
                simplex = [best + sigma * (v - best) for v in simplex]
        simplex.sort(key=f)
        record(simplex[0])
        if norm(grad(f, simplex[0])) < 1e-8:
            break
    return simplex[0]
)";

std::vector<ZooAlgorithm> build_table() {
  std::vector<ZooAlgorithm> t;
  const auto add = [&](std::string id, Task task, Runner r, std::string text) {
    t.push_back({std::move(id), task, std::move(r), std::move(text)});
  };
  add("bubble_sort", Task::Sort, sort_runner(&bubble_sort), kBubbleSort);
  add("bubble_sort_recursive", Task::Sort, sort_runner(&bubble_sort_recursive), kBubbleSortRecursive);
  add("insertion_sort", Task::Sort, sort_runner(&insertion_sort), kInsertionSort);
  add("insertion_sort_recursive", Task::Sort, sort_runner(&insertion_sort_recursive), kInsertionSortRecursive);
  add("selection_sort", Task::Sort, sort_runner(&selection_sort), kSelectionSort);
  add("merge_sort", Task::Sort, sort_runner(&merge_sort), kMergeSort);
  add("merge_sort_buffered", Task::Sort, sort_runner(&merge_sort_buffered), kMergeSortBuffered);
  add("quick_sort", Task::Sort, sort_runner(&quick_sort), kQuickSort);
  add("heap_sort", Task::Sort, sort_runner(&heap_sort), kHeapSort);

  const auto bfs = [](ChildOrder o) { return [o](const TreeData& d, std::uint32_t r) { return bfs_queue(d, r, o); }; };
  const auto dfs = [](ChildOrder o) { return [o](const TreeData& d, std::uint32_t r) { return dfs_stack(d, r, o); }; };
  add("bfs_left", Task::TreeTraversal, tree_runner(bfs(ChildOrder::LeftFirst)), kBfsLeft);
  add("bfs_right", Task::TreeTraversal, tree_runner(bfs(ChildOrder::RightFirst)), kBfsRight);
  add("bfs_iterative", Task::TreeTraversal, tree_runner(bfs(ChildOrder::LeftFirst)), kBfsIterative);
  add("bfs_recursive", Task::TreeTraversal, tree_runner(&bfs_levels_recursive), kBfsRecursive);
  add("dfs_left", Task::TreeTraversal, tree_runner(dfs(ChildOrder::LeftFirst)), kDfsLeft);
  add("dfs_right", Task::TreeTraversal, tree_runner(dfs(ChildOrder::RightFirst)), kDfsRight);
  add("dfs_iterative", Task::TreeTraversal, tree_runner(dfs(ChildOrder::LeftFirst)), kDfsIterative);
  add("dfs_recursive", Task::TreeTraversal, tree_runner(&dfs_recursive), kDfsRecursive);

  const auto greedy = [](Pick p) { return [p](const GraphData& g, std::uint32_t s) { return graph_greedy(g, s, p); }; };
  add("graph_greedy_min", Task::GraphTraversal, graph_runner(greedy(Pick::Min)), kGraphGreedyMin);
  add("graph_greedy_max", Task::GraphTraversal, graph_runner(greedy(Pick::Max)), kGraphGreedyMax);
  add("dijkstra", Task::ShortestPath, graph_runner(&dijkstra), kDijkstra);
  add("bellman_ford", Task::ShortestPath, graph_runner(&bellman_ford), kBellmanFord);
  add("floyd_slice", Task::ShortestPath, graph_runner(&floyd_slice), kFloydSlice);

  add("first_fit", Task::BinPacking, packing_runner(&first_fit), kFirstFit);
  add("first_fit_alt", Task::BinPacking, packing_runner(&first_fit_alt), kFirstFitAlt);
  add("best_fit", Task::BinPacking, packing_runner(&best_fit), kBestFit);
  add("best_fit_alt", Task::BinPacking, packing_runner(&best_fit_alt), kBestFitAlt);
  const auto weighted = [](double w1, double w2) {
    return [w1, w2](const BinPackingData& b) { return weighted_fit(b, w1, w2); };
  };
  add("binpack_param_a", Task::BinPacking, packing_runner(weighted(1.0, 0.5)), binpack_param_text('a', "1.0", "0.5"));
  add("binpack_param_b", Task::BinPacking, packing_runner(weighted(1.0, 0.9)), binpack_param_text('b', "1.0", "0.9"));
  add("binpack_param_c", Task::BinPacking, packing_runner(weighted(0.3, 1.0)), binpack_param_text('c', "0.3", "1.0"));
  add("binpack_param_d", Task::BinPacking, packing_runner(weighted(0.05, 1.0)), binpack_param_text('d', "0.05", "1.0"));

  add("matmul_ijk", Task::MatMul, matmul_runner(LoopOrder::Ijk), kMatmulIjk);
  add("matmul_jik", Task::MatMul, matmul_runner(LoopOrder::Jik), kMatmulJik);

  add("tsp_nearest_neighbor", Task::Tsp, tsp_runner(Pick::Min), kTspNearest);
  add("tsp_farthest_neighbor", Task::Tsp, tsp_runner(Pick::Max), kTspFarthest);

  const std::vector<std::pair<std::string, const char*>> opt = {
      {"sgd", kSgd},
      {"momentum", kMomentum},
      {"cg", kCg},
      {"quasi_newton", kQuasiNewton},
      {"nelder_mead", kNelderMead},
      {"nelder_mead_adaptive", kNelderMeadAdaptive},
      {"adam", kAdam},
      {"lbfgs_like", kLbfgs},
  };
  for (const auto& [id, text] : opt) add(id, Task::Rosenbrock, optimizer_runner(id), text);
  return t;
}

PSTraj finish(std::vector<Solution> steps, std::string algorithm_id, const ProblemInstance& inst,
              std::string_view start_id, std::uint64_t seed) {
  PSTraj t;
  t.steps = std::move(steps);
  t.meta = {std::move(algorithm_id), inst.id, std::string(start_id), seed};
  return t;
}

}  // namespace

const std::vector<ZooAlgorithm>& algorithms() {
  static const std::vector<ZooAlgorithm> table = build_table();
  return table;
}

const ZooAlgorithm* find(std::string_view id) {
  const auto& t = algorithms();
  const auto it = std::find_if(t.begin(), t.end(), [&](const ZooAlgorithm& a) { return a.id == id; });
  return it == t.end() ? nullptr : &*it;
}

AlgorithmSpec spec(std::string_view id) {
  const auto* a = find(id);
  if (a == nullptr) throw Error(Errc::UnknownAlgorithm, "unknown zoo algorithm '" + std::string(id) + "'");
  return AlgorithmSpec::zoo(a->id, a->pseudocode);
}

PSTraj run_zoo(std::string_view id, const ProblemInstance& inst, std::string_view start_id, std::uint64_t seed) {
  const auto* a = find(id);
  if (a == nullptr) throw Error(Errc::UnknownAlgorithm, "unknown zoo algorithm '" + std::string(id) + "'");
  if (a->task != inst.task) {
    throw Error(Errc::TaskMismatch, a->id + " solves " + std::string(task_name(a->task)) + ", instance '" + inst.id +
                                        "' is " + std::string(task_name(inst.task)));
  }
  return finish(a->runner(inst, inst.start(start_id), seed), a->id, inst, start_id, seed);
}

PSTraj run_algorithm(const AlgorithmSpec& spec, const ProblemInstance& inst, std::string_view start_id,
                     std::uint64_t seed) {
  if (!spec.is_dsl()) return run_zoo(std::get<ZooRef>(spec.kind).name, inst, start_id, seed);
  if (inst.task != Task::Tsp) {
    throw Error(Errc::TaskMismatch, "expression heuristics only build tours; instance '" + inst.id + "' is " +
                                        std::string(task_name(inst.task)));
  }
  const auto& tsp = std::get<TspData>(inst.data);
  auto tour = construct_tour(tsp.dist, node_start(inst.start(start_id)), spec.expr());
  return finish(std::move(tour.steps), spec.id(), inst, start_id, seed);
}

std::string_view pair_type_name(PairType t) noexcept {
  switch (t) {
    case PairType::T1: return "T1";
    case PairType::T2: return "T2";
    case PairType::T3: return "T3";
    case PairType::T4: return "T4";
  }
  return "?";
}

const std::vector<DatasetPair>& dataset_pairs() {
  static const std::vector<DatasetPair> pairs = [] {
    std::vector<DatasetPair> p = {
        {PairType::T1, "matmul_ijk", "matmul_jik", "loop order ijk vs jik"},
        {PairType::T1, "bfs_left", "bfs_right", "bfs child order"},
        {PairType::T1, "dfs_left", "dfs_right", "dfs child order"},
        {PairType::T2, "graph_greedy_min", "graph_greedy_max", "greedy min vs max edge"},
        {PairType::T2, "binpack_param_a", "binpack_param_b", "bin scoring weights a/b"},
        {PairType::T2, "binpack_param_c", "binpack_param_d", "bin scoring weights c/d"},
        {PairType::T3, "bfs_recursive", "bfs_iterative", "bfs recursive vs iterative"},
        {PairType::T3, "bubble_sort_recursive", "bubble_sort", "bubble recursive vs iterative"},
        {PairType::T3, "insertion_sort_recursive", "insertion_sort", "insertion recursive vs iterative"},
        {PairType::T3, "merge_sort", "merge_sort_buffered", "two merge sorts"},
        {PairType::T3, "first_fit", "first_fit_alt", "two first-fit packers"},
        {PairType::T3, "best_fit", "best_fit_alt", "two best-fit packers"},
    };
    const std::vector<std::string> sorts = {"bubble_sort", "insertion_sort", "selection_sort",
                                            "merge_sort",  "quick_sort",     "heap_sort"};
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      for (std::size_t j = i + 1; j < sorts.size(); ++j) {
        p.push_back({PairType::T4, sorts[i], sorts[j], sorts[i] + " vs " + sorts[j]});
      }
    }
    p.push_back({PairType::T4, "dijkstra", "bellman_ford", "dijkstra vs bellman_ford"});
    p.push_back({PairType::T4, "dijkstra", "floyd_slice", "dijkstra vs floyd_slice"});
    p.push_back({PairType::T4, "bellman_ford", "floyd_slice", "bellman_ford vs floyd_slice"});
    return p;
  }();
  return pairs;
}

}  // namespace pstraj::zoo
