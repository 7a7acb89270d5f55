#pragma once

// Fibonacci words over {S, L} and the two routes to their transfer matrices:
// direct products of cell matrices, and the element-wise trace-map recursion
//   M_{m+1} = tr(M_m) M_{m-1} - M_{m-2}^{-1}.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltachain/transfer_matrix.hpp"

namespace deltachain {

/// Largest Fibonacci order produced by fibonacci_word (f_24 = 46368 letters).
inline constexpr int kMaxFibonacciOrder = 24;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<CellKind> letters, std::optional<int> order = std::nullopt);

  /// Parses a literal string of 'S' and 'L'. Throws ParseError naming the
  /// offending position.
  static Word from_letters(std::string_view text);
  static Word repeat(CellKind kind, int count);

  const std::vector<CellKind>& letters() const { return letters_; }
  std::optional<int> order() const { return order_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::size_t count(CellKind kind) const;

  /// Total tunnel length in units of b.
  double length_ratio(double q) const;

  std::string str() const;

  friend Word operator+(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word& lhs, const Word& rhs) { return lhs.letters_ == rhs.letters_; }

 private:
  std::vector<CellKind> letters_;
  std::optional<int> order_;
};

/// f_0 = 0, f_1 = f_2 = 1, f_{m+1} = f_{m-1} + f_m.
std::uint64_t fibonacci_number(int m);

/// W_1 = S, W_2 = L, W_{m+1} = W_{m-1} W_m.
Word fibonacci_word(int m);

struct LetterCounts {
  std::uint64_t total = 0;
  std::uint64_t s = 0;
  std::uint64_t l = 0;
};

/// Letter counts of W_m without building the word: (f_m, f_{m-2}, f_{m-1}).
LetterCounts word_counts(int m);

/// Product of cell matrices, leftmost letter leftmost in the product.
TransferMatrix word_matrix(const Word& word, const ChainParams& params);

struct RecursionRow {
  int m = 0;
  complex a, b, c, d;
  complex x, y;  // half-trace and half-difference

  TransferMatrix matrix() const { return {a, b, c, d}; }
};

/// Rows 1..m_max of the Fibonacci transfer matrices by the trace-map
/// recursion, seeded with M_1, M_2 and M_3 = M_1 M_2.
std::vector<RecursionRow> trace_map_sequence(const ChainParams& params, int m_max);

/// Half-traces x_1..x_{m_max} from the scalar map x_{m+1} = 2 x_m x_{m-1} - x_{m-2}.
std::vector<complex> half_trace_sequence(const ChainParams& params, int m_max);

}  // namespace deltachain
