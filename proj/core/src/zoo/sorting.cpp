// Sorting runners. Step 0 is the input array; later steps are full-array
// snapshots after each element-position mutation (swap, shift-insert, or
// merge write-back).

#include <algorithm>
#include <functional>

#include "pstraj/zoo/zoo.hpp"

namespace pstraj::zoo {

namespace {

using Array = std::vector<std::uint32_t>;

struct Recorder {
  std::vector<Solution> steps;
  void snap(const Array& a) { steps.push_back(Solution::perm(a)); }
};

bool bubble_pass(Array& a, std::size_t n, Recorder& rec) {
  bool swapped = false;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (a[j] > a[j + 1]) {
      std::swap(a[j], a[j + 1]);
      rec.snap(a);
      swapped = true;
    }
  }
  return swapped;
}

void bubble_rec(Array& a, std::size_t n, Recorder& rec) {
  if (n <= 1) return;
  if (!bubble_pass(a, n, rec)) return;
  bubble_rec(a, n - 1, rec);
}

// Inserts a[i] into the sorted prefix a[0..i).
void insert_one(Array& a, std::size_t i, Recorder& rec) {
  const std::uint32_t key = a[i];
  std::size_t j = i;
  while (j > 0 && a[j - 1] > key) {
    a[j] = a[j - 1];
    --j;
  }
  a[j] = key;
  if (j != i) rec.snap(a);
}

void insertion_rec(Array& a, std::size_t n, Recorder& rec) {
  if (n <= 1) return;
  insertion_rec(a, n - 1, rec);
  insert_one(a, n - 1, rec);
}

// Copies both halves out, merges, writes back.
void merge_sort_copying(Array& a, std::size_t lo, std::size_t hi, Recorder& rec) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort_copying(a, lo, mid, rec);
  merge_sort_copying(a, mid, hi, rec);
  const Array left(a.begin() + static_cast<std::ptrdiff_t>(lo), a.begin() + static_cast<std::ptrdiff_t>(mid));
  const Array right(a.begin() + static_cast<std::ptrdiff_t>(mid), a.begin() + static_cast<std::ptrdiff_t>(hi));
  Array merged;
  merged.reserve(hi - lo);
  std::merge(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(merged));
  std::copy(merged.begin(), merged.end(), a.begin() + static_cast<std::ptrdiff_t>(lo));
  rec.snap(a);
}

// Index-based merge through one shared scratch buffer.
void merge_sort_shared(Array& a, Array& buf, std::size_t lo, std::size_t hi, Recorder& rec) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  merge_sort_shared(a, buf, lo, mid, rec);
  merge_sort_shared(a, buf, mid, hi, rec);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) buf[k++] = a[j] < a[i] ? a[j++] : a[i++];
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  for (k = lo; k < hi; ++k) a[k] = buf[k];
  rec.snap(a);
}

void quick_rec(Array& a, std::ptrdiff_t lo, std::ptrdiff_t hi, Recorder& rec) {
  if (lo >= hi) return;
  const std::uint32_t pivot = a[static_cast<std::size_t>(hi)];
  std::ptrdiff_t i = lo;
  for (std::ptrdiff_t j = lo; j < hi; ++j) {
    if (a[static_cast<std::size_t>(j)] < pivot) {
      if (i != j) {
        std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
        rec.snap(a);
      }
      ++i;
    }
  }
  if (i != hi) {
    std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(hi)]);
    rec.snap(a);
  }
  quick_rec(a, lo, i - 1, rec);
  quick_rec(a, i + 1, hi, rec);
}

void sift_down(Array& a, std::size_t root, std::size_t end, Recorder& rec) {
  while (2 * root + 1 < end) {
    std::size_t child = 2 * root + 1;
    if (child + 1 < end && a[child] < a[child + 1]) ++child;
    if (a[root] >= a[child]) return;
    std::swap(a[root], a[child]);
    rec.snap(a);
    root = child;
  }
}

}  // namespace

std::vector<Solution> bubble_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  for (std::size_t n = a.size(); n > 1; --n) {
    if (!bubble_pass(a, n, rec)) break;
  }
  return rec.steps;
}

std::vector<Solution> bubble_sort_recursive(Array a) {
  Recorder rec;
  rec.snap(a);
  bubble_rec(a, a.size(), rec);
  return rec.steps;
}

std::vector<Solution> insertion_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  for (std::size_t i = 1; i < a.size(); ++i) insert_one(a, i, rec);
  return rec.steps;
}

std::vector<Solution> insertion_sort_recursive(Array a) {
  Recorder rec;
  rec.snap(a);
  insertion_rec(a, a.size(), rec);
  return rec.steps;
}

std::vector<Solution> selection_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const auto m = static_cast<std::size_t>(std::min_element(a.begin() + static_cast<std::ptrdiff_t>(i), a.end()) - a.begin());
    if (m != i) {
      std::swap(a[i], a[m]);
      rec.snap(a);
    }
  }
  return rec.steps;
}

std::vector<Solution> merge_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  merge_sort_copying(a, 0, a.size(), rec);
  return rec.steps;
}

std::vector<Solution> merge_sort_buffered(Array a) {
  Recorder rec;
  rec.snap(a);
  Array buf(a.size());
  merge_sort_shared(a, buf, 0, a.size(), rec);
  return rec.steps;
}

std::vector<Solution> quick_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  if (!a.empty()) quick_rec(a, 0, static_cast<std::ptrdiff_t>(a.size()) - 1, rec);
  return rec.steps;
}

std::vector<Solution> heap_sort(Array a) {
  Recorder rec;
  rec.snap(a);
  const std::size_t n = a.size();
  for (std::size_t i = n / 2; i-- > 0;) sift_down(a, i, n, rec);
  for (std::size_t end = n; end > 1; --end) {
    std::swap(a[0], a[end - 1]);
    rec.snap(a);
    sift_down(a, 0, end - 1, rec);
  }
  return rec.steps;
}

}  // namespace pstraj::zoo
