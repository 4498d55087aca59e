#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hospsim {

/// Coded two-level design, one row per run, entries in {-1, +1}.
template <typename Scalar>
using CodedMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Added column as the product of base columns; bit j of `mask` is base column j.
struct GeneratorWord {
  char target = 'I';
  std::uint32_t mask = 0;
};

struct Design {
  CodedMatrix<int> matrix;
  std::vector<char> labels;
  std::vector<GeneratorWord> generators;
};

/// Generators of the 256-run screening design:
/// I=ABCD J=ABEF K=ACEG L=BDFG M=BCEH N=ABDFH O=ABDEGH P=ACDFGH.
const std::vector<GeneratorWord>& screening_generators();

/// Base columns in standard order (first column alternates fastest, first
/// row all -1), added columns from `generators`. Labels run A, B, ... .
Design make_design(int base_factors, const std::vector<GeneratorWord>& generators);

/// The 2^(16-8) screening design, unrandomized.
Design generate_design();

/// Letters of a generator word, e.g. "ABCD".
std::string word_letters(std::uint32_t mask, const std::vector<char>& labels);

struct DesignReport {
  bool balanced = true;
  bool orthogonal = true;
  bool main_effects_clear = true;  // no word of length 1 or 2
  /// Defining relation words (including the sign for negated words, "-ABC").
  std::vector<std::string> words;
  /// word_length_pattern[L] is the number of words of length L.
  std::vector<int> word_length_pattern;
  std::optional<int> resolution;  // empty for a full factorial
  std::vector<std::string> problems;

  bool ok() const { return balanced && orthogonal && main_effects_clear; }
};

/// Balance, pairwise orthogonality and the defining relation, found by
/// checking every product of columns for constancy. Up to 24 columns.
DesignReport verify_design(const CodedMatrix<int>& matrix, const std::vector<char>& labels);

/// Dot products of all column pairs (upper triangle), for inspection.
template <typename Scalar>
CodedMatrix<Scalar> column_gram(const CodedMatrix<Scalar>& m) {
  return m.transpose() * m;
}

}  // namespace hospsim
