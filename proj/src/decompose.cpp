#include "qsturm/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsturm/contfrac.hpp"
#include "qsturm/error.hpp"
#include "qsturm/factor_index.hpp"
#include "qsturm/words.hpp"

namespace qsturm {

std::size_t RauzyGraph::out_degree(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(arcs.begin(), arcs.end(), [v](const auto& a) { return a.first == v; }));
}

std::size_t RauzyGraph::in_degree(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(arcs.begin(), arcs.end(), [v](const auto& a) { return a.second == v; }));
}

namespace {

// Graph skeleton straight from the factor index: class ids for vertices and
// edges, one witness position per class.
struct Skeleton {
  std::vector<std::uint32_t> vertex_of;  // position -> vertex class
  std::vector<std::size_t> vertex_witness;
  std::vector<std::size_t> edge_witness;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  std::vector<std::uint32_t> out_deg, in_deg;
};

// With `recurrent_only`, edges seen once in the window are left out of the
// degree counts: they come from a non-recurrent prefix.
Skeleton skeleton(const FactorIndex& index, std::size_t n, bool recurrent_only = false) {
  Skeleton s;
  std::uint32_t nv = 0, ne = 0;
  s.vertex_of = index.classes(n, &nv);
  const auto edge_of = index.classes(n + 1, &ne);
  s.vertex_witness.assign(nv, 0);
  s.edge_witness.assign(ne, 0);
  std::vector<bool> seen_v(nv, false), seen_e(ne, false);
  std::vector<std::uint32_t> edge_count(ne, 0);
  for (std::size_t i = 0; i < s.vertex_of.size(); ++i) {
    const auto v = s.vertex_of[i];
    if (v != FactorIndex::kNoClass && !seen_v[v]) {
      seen_v[v] = true;
      s.vertex_witness[v] = i;
    }
    const auto e = edge_of[i];
    if (e != FactorIndex::kNoClass) ++edge_count[e];
    if (e != FactorIndex::kNoClass && !seen_e[e]) {
      seen_e[e] = true;
      s.edge_witness[e] = i;
    }
  }
  s.arcs.resize(ne);
  s.out_deg.assign(nv, 0);
  s.in_deg.assign(nv, 0);
  for (std::uint32_t e = 0; e < ne; ++e) {
    const std::size_t i = s.edge_witness[e];
    s.arcs[e] = {s.vertex_of[i], s.vertex_of[i + 1]};
    if (recurrent_only && edge_count[e] < 2) continue;
    ++s.out_deg[s.arcs[e].first];
    ++s.in_deg[s.arcs[e].second];
  }
  return s;
}

}  // namespace

RauzyGraph rauzy_graph(const Word& w, std::size_t n) {
  if (n > complexity_safe_window(w.size())) {
    throw Error(ErrorKind::WindowTooLarge, "factor length " + std::to_string(n) +
                                               " exceeds the safe window of a word of length " +
                                               std::to_string(w.size()));
  }
  const FactorIndex index(w.span());
  const Skeleton s = skeleton(index, n);
  RauzyGraph g;
  g.n = n;
  for (std::size_t pos : s.vertex_witness) g.vertices.push_back(w.slice(pos, n));
  for (std::size_t pos : s.edge_witness) g.edges.push_back(w.slice(pos, n + 1));
  g.arcs = s.arcs;
  return g;
}

SpecialFactors special_factors(const RauzyGraph& g) {
  std::vector<std::size_t> out(g.vertices.size(), 0), in(g.vertices.size(), 0);
  for (const auto& [src, dst] : g.arcs) {
    ++out[src];
    ++in[dst];
  }
  SpecialFactors sf;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (out[v] >= 2) sf.right_special.push_back(g.vertices[v]);
    if (in[v] >= 2) sf.left_special.push_back(g.vertices[v]);
    if (out[v] >= 2 && in[v] >= 2) sf.bispecial.push_back(g.vertices[v]);
  }
  return sf;
}

const char* to_string(QsKind kind) {
  switch (kind) {
    case QsKind::Periodic: return "periodic";
    case QsKind::Sturmian: return "sturmian";
    case QsKind::QuasiSturmian: return "quasi_sturmian";
    case QsKind::Other: return "other";
  }
  return "other";
}

QsClassification detect_qs(const Word& w) {
  const std::size_t safe = complexity_safe_window(w.size());
  const std::size_t trusted = safe / 2;
  if (trusted < 8) {
    throw Error(ErrorKind::InconclusiveWindow, "word too short to classify (" + std::to_string(w.size()) + " symbols)");
  }
  const auto p = complexity(w, safe);
  QsClassification out;
  for (std::size_t n = 1; n <= safe; ++n) {
    // p(n) <= n, or p(n+1) = p(n), forces eventual periodicity
    if (p[n] <= n || (n < safe && p[n + 1] == p[n])) {
      out.kind = QsKind::Periodic;
      out.k = static_cast<std::int64_t>(p[safe]);
      out.n0 = n;
      return out;
    }
  }
  auto d = [&](std::size_t n) { return static_cast<std::int64_t>(p[n]) - static_cast<std::int64_t>(n); };
  const std::size_t lo = trusted / 2;
  bool flat = true;
  for (std::size_t n = lo; n < trusted; ++n) flat = flat && d(n + 1) == d(n);
  if (!flat) {
    if (d(trusted) - d(lo) <= 2) {
      throw Error(ErrorKind::InconclusiveWindow, "complexity still rising on the trusted window; use a longer word");
    }
    return out;
  }
  out.k = d(trusted);
  out.n0 = 1;
  while (d(out.n0) != out.k) ++out.n0;
  out.kind = out.k == 1 ? QsKind::Sturmian : QsKind::QuasiSturmian;
  return out;
}

Decomposition cassaigne_decompose(const Word& w) {
  const QsClassification cls = detect_qs(w);
  if (cls.kind != QsKind::Sturmian && cls.kind != QsKind::QuasiSturmian) {
    throw Error(ErrorKind::NotQuasiSturmian, std::string("word classified as ") + to_string(cls.kind));
  }
  const FactorIndex index(w.span());
  const std::size_t safe = complexity_safe_window(w.size());
  const std::size_t start = cls.k == 1 ? 0 : cls.n0;

  for (std::size_t n = start; n < safe; ++n) {
    const Skeleton s = skeleton(index, n, true);
    std::size_t right = 0, left = 0;
    std::uint32_t hub = FactorIndex::kNoClass;
    for (std::uint32_t v = 0; v < s.out_deg.size(); ++v) {
      right += s.out_deg[v] >= 2;
      left += s.in_deg[v] >= 2;
      if (s.out_deg[v] == 2 && s.in_deg[v] == 2) hub = v;
    }
    if (right != 1 || left != 1 || hub == FactorIndex::kNoClass) continue;

    std::vector<std::size_t> visits;
    for (std::size_t i = 0; i < s.vertex_of.size(); ++i) {
      if (s.vertex_of[i] == hub) visits.push_back(i);
    }
    if (visits.size() < 3) continue;

    // return words, keyed by the symbol that follows the bispecial factor
    Word first, second;
    Symbol first_ext = 0, second_ext = 0;
    bool consistent = true;
    for (std::size_t j = 0; j + 1 < visits.size() && consistent; ++j) {
      const Word r = w.slice(visits[j], visits[j + 1] - visits[j]);
      const Symbol ext = w[visits[j] + n];
      if (first.empty()) {
        first = r;
        first_ext = ext;
      } else if (r == first) {
        consistent = ext == first_ext;
      } else if (second.empty()) {
        second = r;
        second_ext = ext;
        consistent = ext != first_ext;
      } else {
        consistent = r == second;
      }
    }
    if (!consistent || second.empty()) continue;
    if (second_ext < first_ext) {
      std::swap(first, second);
      std::swap(first_ext, second_ext);
    }

    Decomposition d;
    d.prefix_w = w.prefix(visits.front());
    d.subst = {first, second};
    d.bispecial_length = n;
    d.analyzed_length = visits.back();
    for (std::size_t j = 0; j + 1 < visits.size(); ++j) {
      d.base_prefix.push_back(w[visits[j] + n] == first_ext ? kLetterA : kLetterB);
    }
    d.theta_estimate =
        static_cast<double>(d.base_prefix.count(kLetterA)) / static_cast<double>(d.base_prefix.size());

    const Word regenerated = d.prefix_w + substitute(d.subst, d.base_prefix);
    if (regenerated != w.prefix(d.analyzed_length)) {
      throw Error(ErrorKind::RegenerationMismatch, "decomposition does not reproduce the analyzed window");
    }
    return d;
  }
  throw Error(ErrorKind::NoBispecialFound, "no bispecial factor with two return paths up to length " +
                                               std::to_string(safe));
}

double rotation_number(const Word& base, std::size_t refine) {
  if (base.size() < 64) {
    throw Error(ErrorKind::BasePrefixTooShort, "base prefix has " + std::to_string(base.size()) +
                                                   " symbols, need at least 64");
  }
  const std::size_t count_a = base.count(kLetterA);
  if (count_a == 0 || count_a == base.size()) {
    throw Error(ErrorKind::NotQuasiSturmian, "base prefix uses a single letter");
  }
  const double freq = static_cast<double>(count_a) / static_cast<double>(base.size());
  if (refine == 0) return freq;
  const Expansion e = expand(freq, refine);
  const std::size_t terms = e.cf.coeffs().size();
  return value(e.cf, terms);
}

ContinuedFraction rotation_cf(const Word& base) {
  const double freq = rotation_number(base, 0);
  const Expansion e = expand(freq, 40);
  const double limit = std::sqrt(static_cast<double>(base.size()));
  std::vector<std::int64_t> kept;
  double q_prev = 1.0, q = 0.0;  // q_0 = 1, q_{-1} = 0
  for (std::int64_t a : e.cf.coeffs()) {
    const double q_next = static_cast<double>(a) * q_prev + q;
    if (q_next > limit && !kept.empty()) break;
    kept.push_back(a);
    q = q_prev;
    q_prev = q_next;
  }
  return ContinuedFraction(std::move(kept));
}

}  // namespace qsturm
