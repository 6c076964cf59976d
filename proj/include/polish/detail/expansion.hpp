// Symbol-agnostic pieces of a rewriting step, shared by the plain engine
// (01 strings) and the coded engine (id sequences, 0 = operation).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polish/law.hpp"

namespace polish::detail {

/// Index form of a dynamic range. Component k occupies [begin[k], end[k]);
/// for k >= 2 it is followed by an operation at end[k]; `close` is the
/// operation that multiplies u0 into the rest.
struct RangeBounds {
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;
  std::size_t close = 0;

  std::size_t arity() const noexcept { return begin.size() - 1; }
  std::size_t region_begin() const noexcept { return begin[0]; }
  std::size_t region_size() const noexcept { return close - begin[0] + 1; }
};

template <class Sym, class IsOp>
std::optional<std::size_t> subterm_start(std::span<const Sym> w,
                                         std::size_t last, IsOp is_op) {
  long sum = 0;
  for (std::size_t q = last + 1; q-- > 0;) {
    sum += is_op(w[q]) ? -1 : 1;
    if (sum == 1) return q;
  }
  return std::nullopt;
}

template <class Sym, class IsOp>
std::optional<RangeBounds> locate_range(std::span<const Sym> w, std::size_t d,
                                        IsOp is_op) {
  const std::size_t size = w.size();
  if (d == 0 || d >= size || is_op(w[d])) return std::nullopt;
  auto s1 = subterm_start(w, d - 1, is_op);
  if (!s1 || *s1 == 0) return std::nullopt;
  auto s0 = subterm_start(w, *s1 - 1, is_op);
  if (!s0) return std::nullopt;

  RangeBounds r;
  r.begin = {*s0, *s1};
  r.end = {*s1, d};
  std::size_t cursor = d;
  for (;;) {
    if (cursor >= size || is_op(w[cursor])) return std::nullopt;
    // Shortest weight-1 segment immediately followed by an operation.
    long sum = 0;
    std::size_t j = cursor;
    for (; j < size; ++j) {
      sum += is_op(w[j]) ? -1 : 1;
      if (sum == 1 && j + 1 < size && is_op(w[j + 1])) break;
    }
    if (j >= size) return std::nullopt;
    r.begin.push_back(cursor);
    r.end.push_back(j + 1);
    cursor = j + 2;
    if (cursor >= size) return std::nullopt;
    if (is_op(w[cursor])) {
      r.close = cursor;
      return r;
    }
  }
}

/// Drives the expansion template of `law` for components u0..un. `part(k)`
/// appends component k, `op()` appends one operation symbol.
template <class Part, class Op>
void emit_expansion(Law law, std::size_t n, Part&& part, Op&& op) {
  auto prefix = [&](std::size_t k) {  // z_k = u1 u2 0 u3 0 ... u_{k-1} 0
    part(1);
    for (std::size_t i = 2; i < k; ++i) {
      part(i);
      op();
    }
  };
  part(0);
  part(1);
  op();
  for (std::size_t k = 2; k <= n; ++k) {
    switch (law) {
      case Law::AC:
        part(0);
        part(k);
        break;
      case Law::BC:
        if (k == 2) {
          part(1);
        } else {
          prefix(k);
        }
        part(k);
        break;
      case Law::CA:
        part(k);
        part(0);
        break;
      case Law::CB:
        part(k);
        if (k == 2) {
          part(1);
        } else {
          prefix(k);
        }
        break;
      case Law::CC:
        part(k);
        part(k);
        break;
      case Law::AAC:
        part(0);
        part(0);
        part(k);
        op();
        break;
    }
    op();
    op();
  }
}

/// Appends the expansion of the range in `w` to `out` (region only, no head
/// or tail).
template <class Sym, class Out>
void append_expansion(Law law, std::span<const Sym> w, const RangeBounds& r,
                      Sym op_symbol, Out& out) {
  emit_expansion(
      law, r.arity(),
      [&](std::size_t k) {
        out.insert(out.end(), w.begin() + r.begin[k], w.begin() + r.end[k]);
      },
      [&] { out.push_back(op_symbol); });
}

}  // namespace polish::detail
