#include "deltachain/substitution.hpp"

#include <cmath>

namespace deltachain {

namespace {

constexpr double kEntryLimit = 1e300;

void check_order(int m) {
  if (m < 1) {
    throw Error(ErrorKind::InvalidParameter, "Fibonacci order must be >= 1");
  }
}

void check_entries(const RecursionRow& row) {
  const double big = row.matrix().max_abs();
  if (!(big < kEntryLimit)) {
    throw Error(ErrorKind::OverflowRisk,
                "trace-map entries exceed 1e300 at m = " + std::to_string(row.m));
  }
}

RecursionRow make_row(int m, const TransferMatrix& t) {
  return {m, t.a, t.b, t.c, t.d, t.half_trace(), t.half_difference()};
}

}  // namespace

Word::Word(std::vector<CellKind> letters, std::optional<int> order)
    : letters_(std::move(letters)), order_(order) {}

Word Word::from_letters(std::string_view text) {
  std::vector<CellKind> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'S': letters.push_back(CellKind::S); break;
      case 'L': letters.push_back(CellKind::L); break;
      default:
        throw Error(ErrorKind::ParseError, "unexpected character '" + std::string(1, text[i]) +
                                               "' at position " + std::to_string(i));
    }
  }
  if (letters.empty()) {
    throw Error(ErrorKind::ParseError, "empty word");
  }
  return Word(std::move(letters));
}

Word Word::repeat(CellKind kind, int count) {
  if (count < 1) {
    throw Error(ErrorKind::InvalidParameter, "repeat count must be >= 1");
  }
  return Word(std::vector<CellKind>(static_cast<std::size_t>(count), kind));
}

std::size_t Word::count(CellKind kind) const {
  std::size_t n = 0;
  for (CellKind k : letters_) n += (k == kind);
  return n;
}

double Word::length_ratio(double q) const {
  return static_cast<double>(count(CellKind::S)) + q * static_cast<double>(count(CellKind::L));
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (CellKind k : letters_) out.push_back(k == CellKind::S ? 'S' : 'L');
  return out;
}

Word operator+(const Word& lhs, const Word& rhs) {
  std::vector<CellKind> letters = lhs.letters_;
  letters.insert(letters.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(letters));
}

std::uint64_t fibonacci_number(int m) {
  if (m < 0 || m > 90) {
    throw Error(ErrorKind::InvalidParameter, "fibonacci_number defined for 0 <= m <= 90");
  }
  std::uint64_t cur = 0, next = 1;
  for (int k = 0; k < m; ++k) {
    const std::uint64_t sum = cur + next;
    cur = next;
    next = sum;
  }
  return cur;
}

Word fibonacci_word(int m) {
  check_order(m);
  if (m > kMaxFibonacciOrder) {
    throw Error(ErrorKind::OrderTooLarge, "Fibonacci order " + std::to_string(m) +
                                              " exceeds the limit " +
                                              std::to_string(kMaxFibonacciOrder));
  }
  Word older({CellKind::S}, 1);
  if (m == 1) return older;
  Word newer({CellKind::L}, 2);
  for (int k = 3; k <= m; ++k) {
    Word next((older + newer).letters(), k);
    older = std::move(newer);
    newer = std::move(next);
  }
  return newer;
}

LetterCounts word_counts(int m) {
  check_order(m);
  if (m == 1) return {1, 1, 0};
  if (m == 2) return {1, 0, 1};
  return {fibonacci_number(m), fibonacci_number(m - 2), fibonacci_number(m - 1)};
}

TransferMatrix word_matrix(const Word& word, const ChainParams& params) {
  params.validate();
  if (word.empty()) {
    throw Error(ErrorKind::InvalidParameter, "word_matrix of an empty word");
  }
  const double exponent = params.beta * word.length_ratio(params.q);
  if (params.regime == Regime::Bound && exponent >= kOverflowExponent) {
    throw Error(ErrorKind::OverflowRisk,
                "beta * string length = " + std::to_string(exponent) + " exceeds guard");
  }
  const TransferMatrix s = cell_matrix(params, CellKind::S);
  const TransferMatrix l = cell_matrix(params, CellKind::L);
  TransferMatrix product = TransferMatrix::identity();
  for (CellKind k : word.letters()) {
    product = product * (k == CellKind::S ? s : l);
  }
  // Large delta grows entries faster than the exponent guard accounts for.
  if (!(product.max_abs() < kEntryLimit)) {
    throw Error(ErrorKind::OverflowRisk, "word matrix entries exceed 1e300");
  }
  return product;
}

std::vector<RecursionRow> trace_map_sequence(const ChainParams& params, int m_max) {
  if (m_max < 3) {
    throw Error(ErrorKind::InvalidParameter, "trace_map_sequence needs m_max >= 3");
  }
  const TransferMatrix m1 = cell_matrix(params, CellKind::S);
  const TransferMatrix m2 = cell_matrix(params, CellKind::L);
  std::vector<TransferMatrix> mats{m1, m2, m1 * m2};
  mats.reserve(static_cast<std::size_t>(m_max));

  std::vector<RecursionRow> rows;
  rows.reserve(static_cast<std::size_t>(m_max));
  for (int k = 0; k < 3; ++k) rows.push_back(make_row(k + 1, mats[k]));

  for (int m = 3; m < m_max; ++m) {
    const TransferMatrix& cur = mats[m - 1];
    const TransferMatrix& prev = mats[m - 2];
    const TransferMatrix& prev2 = mats[m - 3];
    TransferMatrix next = prev * (cur.a + cur.d) - prev2.adjugate();
    mats.push_back(next);
    rows.push_back(make_row(m + 1, next));
    check_entries(rows.back());
  }
  return rows;
}

std::vector<complex> half_trace_sequence(const ChainParams& params, int m_max) {
  if (m_max < 3) {
    throw Error(ErrorKind::InvalidParameter, "half_trace_sequence needs m_max >= 3");
  }
  const TransferMatrix m1 = cell_matrix(params, CellKind::S);
  const TransferMatrix m2 = cell_matrix(params, CellKind::L);
  std::vector<complex> x{m1.half_trace(), m2.half_trace(), (m1 * m2).half_trace()};
  for (int m = 3; m < m_max; ++m) {
    complex next = 2.0 * x[m - 1] * x[m - 2] - x[m - 3];
    if (!(std::abs(next) < kEntryLimit)) {
      throw Error(ErrorKind::OverflowRisk, "half-trace exceeds 1e300");
    }
    x.push_back(next);
  }
  return x;
}

}  // namespace deltachain
