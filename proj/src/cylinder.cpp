#include "odolin/cylinder.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "odolin/error.hpp"

namespace odolin {

DigitSet DigitSet::of(std::vector<std::uint64_t> digits) {
  std::sort(digits.begin(), digits.end());
  digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
  DigitSet out;
  out.full_ = false;
  out.digits_ = std::move(digits);
  return out;
}

bool DigitSet::contains(std::uint64_t d) const {
  return full_ || std::binary_search(digits_.begin(), digits_.end(), d);
}

Rational DigitSet::mass(const CoordMeasure& mu) const {
  if (full_) return 1;
  Rational total = 0;
  for (auto d : digits_) total += mu.mass(d);
  return total;
}

WindowSet WindowSet::empty() { return WindowSet(); }

WindowSet WindowSet::full(std::size_t window) {
  return box(std::vector<DigitSet>(window + 1, DigitSet::all()));
}

WindowSet WindowSet::box(std::vector<DigitSet> coords) {
  if (coords.empty()) coords.push_back(DigitSet::all());
  for (const auto& c : coords)
    if (!c.is_full() && c.digits().empty()) return empty();
  WindowSet out;
  out.form_ = Form::Box;
  out.coords_ = std::move(coords);
  return out;
}

WindowSet WindowSet::box_fixing(const std::vector<std::pair<std::size_t, DigitSet>>& fixes) {
  std::size_t window = 0;
  for (const auto& [i, d] : fixes) window = std::max(window, i);
  std::vector<DigitSet> coords(window + 1, DigitSet::all());
  for (const auto& [i, d] : fixes) coords[i] = d;
  return box(std::move(coords));
}

WindowSet WindowSet::block(std::size_t lo, std::size_t hi, std::vector<std::uint64_t> cells,
                           const BaseSeq& base) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "block range with hi < lo");
  Integer size = base.range_product(lo, hi);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (cells.empty()) return empty();
  if (Integer(std::to_string(cells.back())) >= size)
    throw Error(ErrorCode::OutOfRange, "block cell index outside the coordinate range");
  WindowSet out;
  out.form_ = Form::Block;
  out.lo_ = lo;
  out.hi_ = hi;
  out.cells_ = std::move(cells);
  return out;
}

std::size_t WindowSet::window() const noexcept {
  switch (form_) {
    case Form::Box: return coords_.size() - 1;
    case Form::Block: return hi_;
    case Form::Empty: return 0;
  }
  return 0;
}

DigitSet WindowSet::coord(std::size_t i) const {
  if (form_ == Form::Box && i < coords_.size()) return coords_[i];
  return DigitSet::all();
}

namespace {

// Last coordinate that actually restricts the set.
std::size_t constrained_extent(const WindowSet& s) {
  if (s.form() == WindowSet::Form::Block) return s.hi();
  std::size_t last = 0;
  for (std::size_t i = 0; i < s.coords().size(); ++i)
    if (!s.coords()[i].is_full()) last = i;
  return last;
}

std::uint64_t checked_cells(const BaseSeq& base, std::size_t a, std::size_t b) {
  Integer p = base.range_product(a, b);
  if (p > Integer(std::to_string(kMaxBlockCells)))
    throw Error(ErrorCode::SizeLimit, "coordinate range [" + std::to_string(a) + ".." +
                                          std::to_string(b) + "] has " + p.get_str() +
                                          " cells");
  return p.get_ui();
}

// Calls visit(x, digits) for every local cell of [a..b] in index order.
template <class Visit>
void for_each_cell(const BaseSeq& base, std::size_t a, std::size_t b, Visit&& visit) {
  std::uint64_t total = checked_cells(base, a, b);
  std::vector<std::uint64_t> digits(b - a + 1, 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    visit(x, digits);
    for (std::size_t s = 0; s < digits.size(); ++s) {
      if (++digits[s] < base.alpha(a + s)) break;
      digits[s] = 0;
    }
  }
}

std::vector<Rational> cell_masses(const MeasureFamily& family, std::size_t a, std::size_t b) {
  std::vector<Rational> out;
  for_each_cell(family.base(), a, b, [&](std::uint64_t, const std::vector<std::uint64_t>& d) {
    Rational m = 1;
    for (std::size_t s = 0; s < d.size(); ++s) m *= family.coord(a + s).mass(d[s]);
    out.push_back(std::move(m));
  });
  return out;
}

}  // namespace

std::vector<bool> membership(const WindowSet& s, std::size_t a, std::size_t b,
                             const BaseSeq& base) {
  std::vector<bool> out;
  switch (s.form()) {
    case WindowSet::Form::Empty:
      out.assign(checked_cells(base, a, b), false);
      return out;
    case WindowSet::Form::Box:
      for_each_cell(base, a, b, [&](std::uint64_t, const std::vector<std::uint64_t>& d) {
        bool in = true;
        for (std::size_t t = 0; t < d.size() && in; ++t) in = s.coord(a + t).contains(d[t]);
        out.push_back(in);
      });
      // coordinates of a Box outside [a..b] must be unconstrained
      for (std::size_t i = 0; i < s.coords().size(); ++i)
        if ((i < a || i > b) && !s.coords()[i].is_full())
          throw Error(ErrorCode::InvalidArgument, "Box constrained outside the cell range");
      return out;
    case WindowSet::Form::Block: {
      if (s.lo() < a || s.hi() > b)
        throw Error(ErrorCode::InvalidArgument, "Block range not inside the cell range");
      std::uint64_t offset_len = s.lo() - a;
      for_each_cell(base, a, b, [&](std::uint64_t, const std::vector<std::uint64_t>& d) {
        std::uint64_t local = 0;
        for (std::size_t t = s.hi() - a + 1; t-- > offset_len;)
          local = local * base.alpha(a + t) + d[t];
        out.push_back(std::binary_search(s.cells().begin(), s.cells().end(), local));
      });
      return out;
    }
  }
  return out;
}

namespace {

// Membership restricted to the segment [a..b]: constraints of s outside the
// segment are handled by the other segments, so they are ignored here.
std::vector<bool> segment_membership(const WindowSet& s, std::size_t a, std::size_t b,
                                     const BaseSeq& base) {
  if (s.form() == WindowSet::Form::Block && (s.hi() < a || s.lo() > b))
    return std::vector<bool>(checked_cells(base, a, b), true);
  if (s.form() != WindowSet::Form::Box) return membership(s, a, b, base);
  std::vector<bool> out;
  for_each_cell(base, a, b, [&](std::uint64_t, const std::vector<std::uint64_t>& d) {
    bool in = true;
    for (std::size_t t = 0; t < d.size() && in; ++t) in = s.coord(a + t).contains(d[t]);
    out.push_back(in);
  });
  return out;
}

}  // namespace

Rational set_measure(const WindowSet& s, const MeasureFamily& family) {
  switch (s.form()) {
    case WindowSet::Form::Empty:
      return 0;
    case WindowSet::Form::Box: {
      Rational m = 1;
      for (std::size_t i = 0; i < s.coords().size(); ++i)
        m *= s.coords()[i].mass(family.coord(i));
      return m;
    }
    case WindowSet::Form::Block: {
      Rational m = 0;
      for (auto cell : s.cells()) {
        std::uint64_t rest = cell;
        Rational c = 1;
        for (std::size_t i = s.lo(); i <= s.hi(); ++i) {
          std::uint64_t a = family.base().alpha(i);
          c *= family.coord(i).mass(rest % a);
          rest /= a;
        }
        m += c;
      }
      return m;
    }
  }
  return 0;
}

namespace {

// One step of the carry traversal: a single coordinate, or a merged range
// of coordinates that some Block constrains jointly.
struct Segment {
  std::size_t a = 0;
  std::size_t b = 0;
  bool block = false;
  DigitSet s_digits = DigitSet::all();
  DigitSet t_digits = DigitSet::all();
  std::vector<bool> s_cells;
  std::vector<bool> t_cells;
  std::uint64_t cells = 0;
  std::uint64_t shift = 0;  // k restricted to the segment, local index
  std::vector<Rational> masses;
};

// Accumulation schemes. Each supplies a value type with zero/one, the
// combination of alternative paths (plus) and of consecutive stages (times),
// and the weight of a single source/image digit pair.
struct SumPolicy {
  using Value = Rational;
  static constexpr bool kNeedsCellMasses = true;
  static constexpr bool kHasBulk = true;
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static bool is_zero(const Value& v) { return sgn(v) == 0; }
  static void add(Value& acc, const Value& v) { acc += v; }
  static Value times(const Value& a, const Value& b) { return a * b; }
  // the measure lives on the image point
  static Value pair(const CoordMeasure& mu, std::uint64_t, std::uint64_t e) { return mu.mass(e); }
  static Value cell_pair(const std::vector<Rational>& m, std::uint64_t, std::uint64_t y) {
    return m[y];
  }
  static Value bulk(const CoordMeasure& mu, std::uint64_t lo, std::uint64_t hi) {
    return mu.mass_of_range(lo, hi);
  }
};

struct AnyPolicy {
  using Value = bool;
  static constexpr bool kNeedsCellMasses = false;
  static constexpr bool kHasBulk = true;
  static Value zero() { return false; }
  static Value one() { return true; }
  static bool is_zero(Value v) { return !v; }
  static void add(Value& acc, Value v) { acc = acc || v; }
  static Value times(Value a, Value b) { return a && b; }
  static Value pair(const CoordMeasure&, std::uint64_t, std::uint64_t) { return true; }
  static Value cell_pair(const std::vector<Rational>&, std::uint64_t, std::uint64_t) {
    return true;
  }
  static Value bulk(const CoordMeasure&, std::uint64_t lo, std::uint64_t hi) { return hi > lo; }
};

struct MaxRatioPolicy {
  using Value = std::optional<Rational>;
  static constexpr bool kNeedsCellMasses = true;
  static constexpr bool kHasBulk = false;
  static Value zero() { return std::nullopt; }
  static Value one() { return Rational(1); }
  static bool is_zero(const Value& v) { return !v; }
  static void add(Value& acc, const Value& v) {
    if (v && (!acc || *v > *acc)) acc = v;
  }
  static Value times(const Value& a, const Value& b) {
    if (!a || !b) return std::nullopt;
    return Rational(*a * *b);
  }
  static Value pair(const CoordMeasure& mu, std::uint64_t d, std::uint64_t e) {
    return Rational(mu.mass(d) / mu.mass(e));
  }
  static Value cell_pair(const std::vector<Rational>& m, std::uint64_t x, std::uint64_t y) {
    return Rational(m[x] / m[y]);
  }
  static Value bulk(const CoordMeasure&, std::uint64_t, std::uint64_t) { return std::nullopt; }
};

template <class P>
std::array<typename P::Value, 2> stage(const Segment& seg, const MeasureFamily& family,
                                       std::uint64_t carry_in) {
  std::array<typename P::Value, 2> out{P::zero(), P::zero()};
  if (seg.block) {
    for (std::uint64_t x = 0; x < seg.cells; ++x) {
      if (!seg.s_cells[x]) continue;
      std::uint64_t y = x + seg.shift + carry_in;
      bool carry = y >= seg.cells;
      if (carry) y -= seg.cells;
      if (seg.t_cells[y]) P::add(out[carry], P::cell_pair(seg.masses, x, y));
    }
    return out;
  }
  const CoordMeasure& mu = family.coord(seg.a);
  const std::uint64_t alpha = mu.alpha();
  const std::uint64_t shift = seg.shift + carry_in;  // <= alpha
  auto visit = [&](std::uint64_t d) {
    std::uint64_t e = d + shift;
    bool carry = e >= alpha;
    if (carry) e -= alpha;
    if (seg.t_digits.contains(e)) P::add(out[carry], P::pair(mu, d, e));
  };
  if (!seg.s_digits.is_full()) {
    for (auto d : seg.s_digits.digits()) visit(d);
  } else if (!seg.t_digits.is_full()) {
    for (auto e : seg.t_digits.digits()) {
      bool carry = e < shift;
      std::uint64_t d = carry ? e + alpha - shift : e - shift;
      P::add(out[carry], P::pair(mu, d, e));
    }
  } else if constexpr (P::kHasBulk) {
    // images below the shift are exactly the ones produced with a carry
    out[1] = P::bulk(mu, 0, shift);
    out[0] = P::bulk(mu, shift, alpha);
  } else {
    if (alpha > kMaxBlockCells)
      throw Error(ErrorCode::SizeLimit,
                  "alpha(" + std::to_string(seg.a) + ") too large to enumerate");
    for (std::uint64_t d = 0; d < alpha; ++d) visit(d);
  }
  return out;
}

template <class P>
typename P::Value traverse(const std::vector<Segment>& segments, const MeasureFamily& family) {
  std::array<typename P::Value, 2> state{P::one(), P::zero()};
  for (const auto& seg : segments) {
    std::array<typename P::Value, 2> next{P::zero(), P::zero()};
    for (std::uint64_t c = 0; c < 2; ++c) {
      if (P::is_zero(state[c])) continue;
      auto m = stage<P>(seg, family, c);
      for (int to = 0; to < 2; ++to)
        if (!P::is_zero(m[to])) P::add(next[to], P::times(state[c], m[to]));
    }
    state = std::move(next);
  }
  // Past the window both sets are free and the carry maps the free tail
  // bijectively onto itself.
  typename P::Value result = state[0];
  P::add(result, state[1]);
  return result;
}

std::optional<std::pair<std::size_t, std::size_t>> block_range(const WindowSet& s) {
  if (s.form() != WindowSet::Form::Block) return std::nullopt;
  return std::make_pair(s.lo(), s.hi());
}

template <class P>
std::vector<Segment> build_segments(const WindowSet& s, const WindowSet& t,
                                    const MixedRadixInt& k, const MeasureFamily& family) {
  const BaseSeq& base = family.base();
  const std::size_t window = k.window();
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (const auto* set : {&s, &t})
    if (auto r = block_range(*set)) ranges.push_back(*r);
  std::sort(ranges.begin(), ranges.end());
  if (ranges.size() == 2 && ranges[1].first <= ranges[0].second) {
    ranges[0].second = std::max(ranges[0].second, ranges[1].second);
    ranges.pop_back();
  }

  std::vector<Segment> out;
  std::size_t i = 0;
  while (i <= window) {
    auto r = std::find_if(ranges.begin(), ranges.end(),
                          [&](const auto& rg) { return rg.first == i; });
    Segment seg;
    if (r != ranges.end()) {
      seg.block = true;
      seg.a = r->first;
      seg.b = r->second;
      seg.cells = checked_cells(base, seg.a, seg.b);
      seg.s_cells = segment_membership(s, seg.a, seg.b, base);
      seg.t_cells = segment_membership(t, seg.a, seg.b, base);
      std::uint64_t shift = 0;
      for (std::size_t c = seg.b + 1; c-- > seg.a;) shift = shift * base.alpha(c) + k[c];
      seg.shift = shift;
      if constexpr (P::kNeedsCellMasses) seg.masses = cell_masses(family, seg.a, seg.b);
      i = seg.b + 1;
    } else {
      seg.a = seg.b = i;
      seg.s_digits = s.coord(i);
      seg.t_digits = t.coord(i);
      seg.shift = k[i];
      ++i;
    }
    out.push_back(std::move(seg));
  }
  return out;
}

MixedRadixInt shift_digits(const Integer& k, std::size_t window, const BaseSeq& base) {
  if (sgn(k) < 0) throw Error(ErrorCode::InvalidShift, "negative shift");
  if (k >= base.beta(window + 1))
    throw Error(ErrorCode::WindowTooSmall,
                "shift " + k.get_str() + " needs a window beyond " + std::to_string(window));
  return encode(k, window, base);
}

std::size_t auto_window(const WindowSet& s, const WindowSet& t, const Integer& k,
                        const BaseSeq& base) {
  return std::max({s.window(), t.window(), encode_min(k, base).window()});
}

void check_inside(const WindowSet& s, std::size_t window) {
  if (!s.is_empty() && constrained_extent(s) > window)
    throw Error(ErrorCode::WindowTooSmall, "set constrained beyond the window");
}

}  // namespace

Rational shifted_intersection_measure(const WindowSet& s, const WindowSet& t,
                                      const Integer& k, const MeasureFamily& family,
                                      std::size_t window) {
  check_inside(s, window);
  check_inside(t, window);
  auto kd = shift_digits(k, window, family.base());
  if (s.is_empty() || t.is_empty()) return 0;
  return traverse<SumPolicy>(build_segments<SumPolicy>(s, t, kd, family), family);
}

Rational shifted_intersection_measure(const WindowSet& s, const WindowSet& t,
                                      const Integer& k, const MeasureFamily& family) {
  return shifted_intersection_measure(s, t, k, family,
                                      auto_window(s, t, k, family.base()));
}

bool shifted_intersects(const WindowSet& s, const WindowSet& t, const Integer& k,
                        const MeasureFamily& family) {
  if (s.is_empty() || t.is_empty()) return false;
  std::size_t window = auto_window(s, t, k, family.base());
  auto kd = shift_digits(k, window, family.base());
  return traverse<AnyPolicy>(build_segments<AnyPolicy>(s, t, kd, family), family);
}

bool disjoint_under(const WindowSet& s, const Integer& k, const MeasureFamily& family) {
  return !shifted_intersects(s, s, k, family);
}

Rational max_cell_ratio(const Integer& k, std::size_t window, const MeasureFamily& family) {
  auto kd = shift_digits(k, window, family.base());
  WindowSet all = WindowSet::full(window);
  auto v = traverse<MaxRatioPolicy>(build_segments<MaxRatioPolicy>(all, all, kd, family),
                                    family);
  return *v;
}

std::pair<Rational, Rational> carry_split_measure(const WindowSet& s, const Integer& k,
                                                  std::size_t n, const MeasureFamily& family) {
  if (s.is_empty()) return {0, 0};
  if (sgn(k) < 0) throw Error(ErrorCode::InvalidShift, "negative shift");
  const BaseSeq& base = family.base();
  auto kmin = encode_min(k, base);
  auto kdigit = [&](std::size_t i) -> std::uint64_t {
    return i <= kmin.window() ? kmin[i] : 0;
  };

  // state[c] = mass of the points seen so far whose running carry is c
  std::array<Rational, 2> state{Rational(1), Rational(0)};
  Rational tail = 1;
  auto step = [&](const std::array<std::array<Rational, 2>, 2>& m) {
    std::array<Rational, 2> next{Rational(0), Rational(0)};
    for (int c = 0; c < 2; ++c)
      for (int to = 0; to < 2; ++to) next[to] += state[c] * m[c][to];
    state = next;
  };

  if (s.form() == WindowSet::Form::Box) {
    const DigitSet free = DigitSet::all();
    for (std::size_t i = 0; i < std::max(s.coords().size(), n); ++i) {
      const CoordMeasure& mu = family.coord(i);
      const DigitSet& ds = i < s.coords().size() ? s.coords()[i] : free;
      if (i >= n) {
        tail *= ds.mass(mu);
        continue;
      }
      std::array<std::array<Rational, 2>, 2> m;
      for (std::uint64_t c = 0; c < 2; ++c) {
        std::uint64_t shift = kdigit(i) + c;
        std::uint64_t cut = mu.alpha() - std::min<std::uint64_t>(shift, mu.alpha());
        if (ds.is_full()) {
          m[c][0] = mu.mass_of_range(0, cut);
          m[c][1] = mu.mass_of_range(cut, mu.alpha());
        } else {
          m[c][0] = m[c][1] = 0;
          for (auto d : ds.digits()) m[c][d >= cut] += mu.mass(d);
        }
      }
      step(m);
    }
  } else {
    // free coordinates below the block
    for (std::size_t i = 0; i < std::min(s.lo(), n); ++i) {
      const CoordMeasure& mu = family.coord(i);
      std::array<std::array<Rational, 2>, 2> m;
      for (std::uint64_t c = 0; c < 2; ++c) {
        std::uint64_t cut = mu.alpha() - std::min<std::uint64_t>(kdigit(i) + c, mu.alpha());
        m[c][0] = mu.mass_of_range(0, cut);
        m[c][1] = mu.mass_of_range(cut, mu.alpha());
      }
      step(m);
    }
    auto masses = cell_masses(family, s.lo(), s.hi());
    if (s.lo() >= n) {
      Rational block_mass = 0;
      for (auto x : s.cells()) block_mass += masses[x];
      tail *= block_mass;
    } else {
      // carry into n is decided by the block digits below n
      std::size_t top = std::min(n, s.hi() + 1);
      std::uint64_t low_cells = 1;
      std::uint64_t low_shift = 0;
      for (std::size_t i = top; i-- > s.lo();) low_shift = low_shift * base.alpha(i) + kdigit(i);
      for (std::size_t i = s.lo(); i < top; ++i) low_cells *= base.alpha(i);
      std::array<std::array<Rational, 2>, 2> m;
      for (std::uint64_t c = 0; c < 2; ++c) {
        m[c][0] = m[c][1] = 0;
        for (auto x : s.cells())
          m[c][(x % low_cells) + low_shift + c >= low_cells] += masses[x];
      }
      step(m);
      // free coordinates between the block and n
      for (std::size_t i = s.hi() + 1; i < n; ++i) {
        const CoordMeasure& mu = family.coord(i);
        std::array<std::array<Rational, 2>, 2> mm;
        for (std::uint64_t c = 0; c < 2; ++c) {
          std::uint64_t cut = mu.alpha() - std::min<std::uint64_t>(kdigit(i) + c, mu.alpha());
          mm[c][0] = mu.mass_of_range(0, cut);
          mm[c][1] = mu.mass_of_range(cut, mu.alpha());
        }
        step(mm);
      }
    }
  }
  return {state[0] * tail, state[1] * tail};
}

WindowSet project(const WindowSet& s, std::size_t i, std::size_t j, const BaseSeq& base) {
  if (j < i) throw Error(ErrorCode::InvalidArgument, "projection range with j < i");
  if (s.is_empty()) return WindowSet::empty();
  std::size_t a = i;
  std::size_t b = j;
  if (s.form() == WindowSet::Form::Block) {
    a = std::min(a, s.lo());
    b = std::max(b, s.hi());
  } else {
    b = std::max(b, constrained_extent(s));
    for (std::size_t c = 0; c < s.coords().size(); ++c)
      if (!s.coords()[c].is_full()) a = std::min(a, c);
  }
  auto in = membership(s, a, b, base);
  std::uint64_t below = 1;
  for (std::size_t c = a; c < i; ++c) below *= base.alpha(c);
  std::uint64_t width = checked_cells(base, i, j);
  std::vector<std::uint64_t> cells;
  std::vector<bool> hit(width, false);
  for (std::uint64_t x = 0; x < in.size(); ++x)
    if (in[x]) hit[(x / below) % width] = true;
  for (std::uint64_t y = 0; y < width; ++y)
    if (hit[y]) cells.push_back(y);
  return WindowSet::block(i, j, std::move(cells), base);
}

WindowSet complement(const WindowSet& s, const BaseSeq& base) {
  if (s.is_empty()) return WindowSet::full(0);
  std::size_t a = 0;
  std::size_t b = 0;
  if (s.form() == WindowSet::Form::Block) {
    a = s.lo();
    b = s.hi();
  } else {
    bool any = false;
    for (std::size_t c = 0; c < s.coords().size(); ++c) {
      if (s.coords()[c].is_full()) continue;
      if (!any) a = c;
      b = c;
      any = true;
    }
    if (!any) return WindowSet::empty();
  }
  auto in = membership(s, a, b, base);
  std::vector<std::uint64_t> cells;
  for (std::uint64_t x = 0; x < in.size(); ++x)
    if (!in[x]) cells.push_back(x);
  return WindowSet::block(a, b, std::move(cells), base);
}

}  // namespace odolin
