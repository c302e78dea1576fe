// Online bin packing (one step per item, CatSeq of bin indices so far) and
// matrix multiplication (flattened output after every completed cell).

#include <algorithm>
#include <numeric>

#include "pstraj/zoo/zoo.hpp"

namespace pstraj::zoo {

namespace {

struct Packing {
  std::vector<double> load;
  std::vector<std::size_t> count;
  std::vector<std::uint32_t> labels;
  std::vector<Solution> steps;

  void place(std::size_t bin, double item) {
    if (bin == load.size()) {
      load.push_back(0.0);
      count.push_back(0);
    }
    load[bin] += item;
    ++count[bin];
    labels.push_back(static_cast<std::uint32_t>(bin));
    steps.push_back(Solution::cat(labels));
  }
};

}  // namespace

std::vector<Solution> first_fit(const BinPackingData& b) {
  Packing p;
  for (double item : b.items) {
    std::size_t bin = 0;
    while (bin < p.load.size() && p.load[bin] + item > b.capacity) ++bin;
    p.place(bin, item);
  }
  return p.steps;
}

std::vector<Solution> first_fit_alt(const BinPackingData& b) {
  Packing p;
  for (double item : b.items) {
    const auto it = std::find_if(p.load.begin(), p.load.end(), [&](double l) { return b.capacity - l >= item; });
    p.place(static_cast<std::size_t>(it - p.load.begin()), item);
  }
  return p.steps;
}

std::vector<Solution> best_fit(const BinPackingData& b) {
  Packing p;
  for (double item : b.items) {
    std::size_t bin = p.load.size();
    double tightest = 0.0;
    for (std::size_t i = 0; i < p.load.size(); ++i) {
      const double left = b.capacity - p.load[i] - item;
      if (left >= 0.0 && (bin == p.load.size() || left < tightest)) {
        bin = i;
        tightest = left;
      }
    }
    p.place(bin, item);
  }
  return p.steps;
}

std::vector<Solution> best_fit_alt(const BinPackingData& b) {
  Packing p;
  for (double item : b.items) {
    std::vector<std::size_t> order(p.load.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return p.load[x] > p.load[y]; });
    const auto it = std::find_if(order.begin(), order.end(), [&](std::size_t i) { return p.load[i] + item <= b.capacity; });
    p.place(it == order.end() ? p.load.size() : *it, item);
  }
  return p.steps;
}

std::vector<Solution> weighted_fit(const BinPackingData& b, double w1, double w2) {
  Packing p;
  for (double item : b.items) {
    std::size_t bin = p.load.size();
    double best = 0.0;
    for (std::size_t i = 0; i < p.load.size(); ++i) {
      const double leftover = b.capacity - p.load[i] - item;
      if (leftover < 0.0) continue;
      const double k = static_cast<double>(p.count[i]);
      const double score = -w1 * leftover / b.capacity + w2 * k / (k + 1.0);
      if (bin == p.load.size() || score > best) {
        bin = i;
        best = score;
      }
    }
    p.place(bin, item);
  }
  return p.steps;
}

std::vector<Solution> matmul(const MatMulData& m, LoopOrder order) {
  const std::size_t rows = m.a.rows;
  const std::size_t cols = m.b.cols;
  const std::size_t inner = m.a.cols;
  std::vector<double> out(rows * cols, 0.0);
  std::vector<Solution> steps{Solution::real(out)};
  const auto cell = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < inner; ++k) s += m.a(i, k) * m.b(k, j);
    out[i * cols + j] = s;
    steps.push_back(Solution::real(out));
  };
  if (order == LoopOrder::Ijk) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) cell(i, j);
    }
  } else {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t i = 0; i < rows; ++i) cell(i, j);
    }
  }
  return steps;
}

}  // namespace pstraj::zoo
