#include "hospsim/doe/design.hpp"

#include <bit>
#include <stdexcept>

namespace hospsim {

const std::vector<GeneratorWord>& screening_generators() {
  static const std::vector<GeneratorWord> g{
      {'I', 0b00001111}, {'J', 0b00110011}, {'K', 0b01010101}, {'L', 0b01101010},
      {'M', 0b10010110}, {'N', 0b10101011}, {'O', 0b11011011}, {'P', 0b11101101},
  };
  return g;
}

Design make_design(int base_factors, const std::vector<GeneratorWord>& generators) {
  if (base_factors < 1 || base_factors > 20) throw std::invalid_argument("make_design: base factors must be in 1..20");
  const Eigen::Index rows = Eigen::Index{1} << base_factors;
  const Eigen::Index cols = base_factors + static_cast<Eigen::Index>(generators.size());
  Design d;
  d.matrix.resize(rows, cols);
  d.generators = generators;
  for (int j = 0; j < base_factors; ++j) d.labels.push_back(static_cast<char>('A' + j));
  for (const auto& g : generators) {
    if (g.mask == 0 || (g.mask >> base_factors) != 0) {
      throw std::invalid_argument(std::string("make_design: generator for ") + g.target + " uses unknown columns");
    }
    d.labels.push_back(g.target);
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (int j = 0; j < base_factors; ++j) d.matrix(r, j) = ((r >> j) & 1) ? 1 : -1;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      int v = 1;
      for (int j = 0; j < base_factors; ++j) {
        if ((generators[g].mask >> j) & 1u) v *= d.matrix(r, j);
      }
      d.matrix(r, base_factors + static_cast<Eigen::Index>(g)) = v;
    }
  }
  return d;
}

Design generate_design() { return make_design(8, screening_generators()); }

std::string word_letters(std::uint32_t mask, const std::vector<char>& labels) {
  std::string s;
  for (std::size_t j = 0; j < labels.size() && j < 32; ++j) {
    if ((mask >> j) & 1u) s += labels[j];
  }
  return s;
}

namespace {

// Column packed as a bitset, bit set where the entry is -1. The product of
// columns is the XOR of their bitsets.
using Bits = std::vector<std::uint64_t>;

}  // namespace

DesignReport verify_design(const CodedMatrix<int>& m, const std::vector<char>& labels) {
  const Eigen::Index n = m.rows();
  const Eigen::Index k = m.cols();
  if (static_cast<Eigen::Index>(labels.size()) != k) throw std::invalid_argument("verify_design: label count != columns");
  if (k > 24) throw std::invalid_argument("verify_design: at most 24 columns");
  DesignReport rep;
  rep.word_length_pattern.assign(static_cast<std::size_t>(k) + 1, 0);

  if ((m.array() != 1 && m.array() != -1).any()) {
    rep.balanced = false;
    rep.problems.push_back("entries outside {-1, +1}");
  }
  const Eigen::RowVectorXi sums = m.colwise().sum();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (sums(j) != 0) {
      rep.balanced = false;
      rep.problems.push_back(std::string("column ") + labels[j] + " unbalanced (sum " + std::to_string(sums(j)) + ")");
    }
  }
  const CodedMatrix<int> gram = column_gram(m);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (gram(i, j) != 0) {
        rep.orthogonal = false;
        rep.problems.push_back(std::string("columns ") + labels[i] + labels[j] + " not orthogonal");
      }
    }
  }

  const std::size_t words64 = static_cast<std::size_t>((n + 63) / 64);
  std::vector<Bits> col(static_cast<std::size_t>(k), Bits(words64, 0));
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (m(r, j) < 0) col[j][r / 64] |= std::uint64_t{1} << (r % 64);
    }
  }
  Bits full(words64, ~std::uint64_t{0});
  if (n % 64 != 0) full.back() = (std::uint64_t{1} << (n % 64)) - 1;

  // Gray-code walk over all non-empty column subsets.
  Bits cur(words64, 0);
  std::uint32_t subset = 0;
  const std::uint32_t total = std::uint32_t{1} << k;
  for (std::uint32_t i = 1; i < total; ++i) {
    const int flip = std::countr_zero(i);
    subset ^= std::uint32_t{1} << flip;
    for (std::size_t w = 0; w < words64; ++w) cur[w] ^= col[flip][w];
    bool zero = true;
    bool ones = true;
    for (std::size_t w = 0; w < words64 && (zero || ones); ++w) {
      zero = zero && cur[w] == 0;
      ones = ones && cur[w] == full[w];
    }
    if (!zero && !ones) continue;
    const int len = std::popcount(subset);
    rep.words.push_back((ones ? "-" : "") + word_letters(subset, labels));
    ++rep.word_length_pattern[static_cast<std::size_t>(len)];
    if (!rep.resolution || len < *rep.resolution) rep.resolution = len;
    if (len <= 2) {
      rep.main_effects_clear = false;
      rep.problems.push_back("main effect aliasing: " + rep.words.back());
    }
  }
  return rep;
}

}  // namespace hospsim
