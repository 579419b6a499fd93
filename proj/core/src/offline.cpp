#include "strel/offline.hpp"

#include "strel/spatial_kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace strel {

Verdict3 classify(const Interval& rho) {
  if (rho.lo > 0.0) {
    return Verdict3::True;
  }
  if (rho.hi < 0.0) {
    return Verdict3::False;
  }
  return Verdict3::Unknown;
}

Interval as_interval(Verdict3 v) { return Interval::point(static_cast<double>(static_cast<int>(v))); }

Verdict3 negate(Verdict3 v) { return static_cast<Verdict3>(-static_cast<int>(v)); }

Interval atom_robust(const Interval& value, Cmp cmp, double c) {
  return cmp == Cmp::Greater ? add_scalar(value, -c) : add_scalar(neg(value), c);
}

Verdict3 atom_verdict(const Interval& value, Cmp cmp, double c) {
  const bool greater = cmp == Cmp::Greater;
  if (greater ? value.lo > c : value.hi < c) {
    return Verdict3::True;
  }
  if (greater ? value.hi < c : value.lo > c) {
    return Verdict3::False;
  }
  return Verdict3::Unknown;
}

Verdict3 verdict_at(const PCSignal& verdicts, std::size_t location, double t) {
  return classify(verdicts.matrix_at(t).at(location, 0));
}

namespace {

// Matrices of each input signal on the pieces of the merged boundary grid.
struct Aligned {
  std::vector<double> starts;
  std::vector<std::vector<const ValueMatrix*>> values;  // [signal][grid piece]
};

Aligned align(std::initializer_list<const PCSignal*> signals) {
  Aligned out;
  out.starts = merged_boundaries(signals);
  for (const PCSignal* s : signals) {
    std::vector<const ValueMatrix*> col;
    col.reserve(out.starts.size());
    std::size_t k = 0;
    for (double t : out.starts) {
      while (k + 1 < s->size() && s->piece(k + 1).start <= t) {
        ++k;
      }
      col.push_back(&s->piece(k).values);
    }
    out.values.push_back(std::move(col));
  }
  return out;
}

PCSignal from_pieces(std::size_t rows, std::vector<Piece> pieces) {
  PCSignal s(rows, 1, std::move(pieces));
  s.canonicalize();
  return s;
}

template <class Fn>
PCSignal map_signal(const PCSignal& s, Fn&& fn) {
  std::vector<Piece> out;
  out.reserve(s.size());
  for (const auto& p : s.pieces()) {
    out.push_back({p.start, fn(p.values)});
  }
  return from_pieces(s.num_locations(), std::move(out));
}

ValueMatrix negate_matrix(const ValueMatrix& m) {
  ValueMatrix r(m.rows(), 1);
  for (std::size_t l = 0; l < m.rows(); ++l) {
    r(l, 0) = neg(m(l, 0));
  }
  return r;
}

PCSignal constant_signal(std::size_t rows, Interval v) {
  return PCSignal::constant(ValueMatrix(rows, 1, v));
}

// max over t' in [t+a, t+b] of min(right(t'), min over [t, t'] of left).
PCSignal bounded_until(const PCSignal& left, const PCSignal& right, double a, double b,
                       Interval bottom) {
  const Aligned g = align({&left, &right});
  const std::size_t rows = left.num_locations();
  const std::size_t P = g.starts.size();
  auto end_of = [&](std::size_t k) { return k + 1 < P ? g.starts[k + 1] : kInf; };

  std::vector<double> grid{0.0};
  for (double s : g.starts) {
    for (double t : {s, s - a, s - b}) {
      if (t > 0.0) {
        grid.push_back(t);
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Piece> out;
  out.reserve(grid.size());
  ValueMatrix run(rows, 1);
  ValueMatrix res(rows, 1);
  for (double tau : grid) {
    const auto k0 = static_cast<std::size_t>(
        std::upper_bound(g.starts.begin(), g.starts.end(), tau) - g.starts.begin() - 1);
    for (std::size_t l = 0; l < rows; ++l) {
      run(l, 0) = Interval(kInf, kInf);
      res(l, 0) = bottom;
    }
    for (std::size_t k = k0; k < P && g.starts[k] - b <= tau; ++k) {
      const ValueMatrix& lv = *g.values[0][k];
      const ValueMatrix& rv = *g.values[1][k];
      const bool in_window = end_of(k) - a > tau;
      for (std::size_t l = 0; l < rows; ++l) {
        run(l, 0) = imin(run(l, 0), lv(l, 0));
        if (in_window) {
          res(l, 0) = imax(res(l, 0), imin(rv(l, 0), run(l, 0)));
        }
      }
    }
    out.push_back({tau, res});
  }
  return from_pieces(rows, std::move(out));
}

// max over t' >= t of min(right(t'), min over [t, t'] of left).
PCSignal unbounded_until(const PCSignal& left, const PCSignal& right) {
  const Aligned g = align({&left, &right});
  const std::size_t rows = left.num_locations();
  const std::size_t P = g.starts.size();
  std::vector<Piece> out(P);
  for (std::size_t i = P; i-- > 0;) {
    const ValueMatrix& lv = *g.values[0][i];
    const ValueMatrix& rv = *g.values[1][i];
    ValueMatrix m(rows, 1);
    for (std::size_t l = 0; l < rows; ++l) {
      const Interval here = imin(rv(l, 0), lv(l, 0));
      m(l, 0) = i + 1 == P ? here : imax(here, imin(lv(l, 0), out[i + 1].values(l, 0)));
    }
    out[i] = {g.starts[i], std::move(m)};
  }
  return from_pieces(rows, std::move(out));
}

class Evaluator {
public:
  Evaluator(const PCSignal& s, const SpatialModel& m, Semantics sem, EvalOptions opts)
      : s_(s), m_(m), sem_(sem), opts_(opts) {
    if (m.size() != s.num_locations()) {
      throw std::invalid_argument("signal has " + std::to_string(s.num_locations()) +
                                  " locations but the spatial model has " +
                                  std::to_string(m.size()));
    }
  }

  Interval top() const { return sem_ == Semantics::Robust ? Interval(kInf, kInf) : Interval(1, 1); }
  Interval bottom() const {
    return sem_ == Semantics::Robust ? Interval(-kInf, -kInf) : Interval(-1, -1);
  }
  Lattice lattice() const { return sem_ == Semantics::Robust ? kRobustLattice : kVerdictLattice; }

  PCSignal eval(const Formula& f, const std::vector<const PCSignal*>& kids) const {
    const std::size_t rows = s_.num_locations();
    switch (f.op()) {
    case Op::True: return constant_signal(rows, top());
    case Op::False: return constant_signal(rows, bottom());
    case Op::Atom: return atom(f);
    case Op::Not: return map_signal(*kids[0], negate_matrix);
    case Op::Or: {
      const Aligned g = align({kids[0], kids[1]});
      std::vector<Piece> out;
      for (std::size_t k = 0; k < g.starts.size(); ++k) {
        ValueMatrix m(rows, 1);
        for (std::size_t l = 0; l < rows; ++l) {
          m(l, 0) = imax((*g.values[0][k])(l, 0), (*g.values[1][k])(l, 0));
        }
        out.push_back({g.starts[k], std::move(m)});
      }
      return from_pieces(rows, std::move(out));
    }
    case Op::Until:
      return bounded_until(*kids[0], *kids[1], f.lower(), f.upper(), bottom());
    case Op::UnboundedUntil: return unbounded_until(*kids[0], *kids[1]);
    case Op::Eventually: {
      const PCSignal always = constant_signal(rows, top());
      return bounded_until(always, *kids[0], f.lower(), f.upper(), bottom());
    }
    case Op::Globally: {
      const PCSignal always = constant_signal(rows, top());
      const PCSignal negated = map_signal(*kids[0], negate_matrix);
      return map_signal(bounded_until(always, negated, f.lower(), f.upper(), bottom()),
                        negate_matrix);
    }
    case Op::Reach: {
      const Aligned g = align({kids[0], kids[1]});
      std::vector<Piece> out;
      for (std::size_t k = 0; k < g.starts.size(); ++k) {
        auto field = reach_field(m_, f.distance(), g.values[0][k]->entries(),
                                 g.values[1][k]->entries(), lattice(), opts_.threads);
        out.push_back({g.starts[k], column(field)});
      }
      return from_pieces(rows, std::move(out));
    }
    case Op::Escape:
      return map_signal(*kids[0], [&](const ValueMatrix& v) {
        return column(escape_field(m_, f.distance(), v.entries(), lattice(), opts_.threads));
      });
    case Op::And:
    case Op::Implies:
    case Op::Somewhere:
    case Op::Everywhere: break;
    }
    throw std::invalid_argument("formula is not normalized: " + f.key());
  }

private:
  static ValueMatrix column(const std::vector<Interval>& xs) {
    ValueMatrix m(xs.size(), 1);
    std::copy(xs.begin(), xs.end(), m.entries().begin());
    return m;
  }

  PCSignal atom(const Formula& f) const {
    if (f.dim() >= s_.num_dims()) {
      throw std::invalid_argument("atom '" + f.key() + "' refers to dimension " +
                                  std::to_string(f.dim()) + " but the signal has " +
                                  std::to_string(s_.num_dims()));
    }
    return map_signal(s_, [&](const ValueMatrix& v) {
      ValueMatrix m(v.rows(), 1);
      for (std::size_t l = 0; l < v.rows(); ++l) {
        const Interval& x = v(l, f.dim());
        m(l, 0) = sem_ == Semantics::Robust ? atom_robust(x, f.cmp(), f.constant())
                                            : as_interval(atom_verdict(x, f.cmp(), f.constant()));
      }
      return m;
    });
  }

  const PCSignal& s_;
  const SpatialModel& m_;
  Semantics sem_;
  EvalOptions opts_;
};

PCSignal evaluate(const PCSignal& s, const SpatialModel& m, const Formula& f, Semantics sem,
                  EvalOptions opts) {
  const SubformulaTable table(normalize(f));
  auto all = evaluate_table(s, m, table, sem, opts);
  return std::move(all.back());
}

} // namespace

std::vector<PCSignal> evaluate_table(const PCSignal& s, const SpatialModel& m,
                                     const SubformulaTable& table, Semantics sem,
                                     EvalOptions opts) {
  const Evaluator ev(s, m, sem, opts);
  std::vector<PCSignal> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<const PCSignal*> kids;
    for (std::size_t c : table.children(i)) {
      kids.push_back(&out[c]);
    }
    out.push_back(ev.eval(table[i], kids));
  }
  return out;
}

PCSignal robust_eval(const PCSignal& s, const SpatialModel& m, const Formula& f,
                     EvalOptions opts) {
  return evaluate(s, m, f, Semantics::Robust, opts);
}

PCSignal boolean_eval(const PCSignal& s, const SpatialModel& m, const Formula& f,
                      EvalOptions opts) {
  return evaluate(s, m, f, Semantics::Boolean, opts);
}

} // namespace strel
