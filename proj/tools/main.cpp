// wittkit command line front end: exact computations for truncation sets,
// big Witt vectors over F_p, relative K-groups of truncated polynomial
// rings, transfer maps and their vanishing thresholds, divisors, and the
// homology of the cyclic bar construction. Output is JSON (or CSV for
// sweeps) and deterministic for fixed inputs.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "wittkit/wittkit.hpp"

using namespace wittkit;

namespace {

std::vector<long long> parse_range(const std::string& spec) {
  // "4" | "2,3,5" | "1..6"
  std::vector<long long> out;
  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    long long lo = std::stoll(spec.substr(0, dots));
    long long hi = std::stoll(spec.substr(dots + 2));
    for (long long v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty range: " + spec);
  return out;
}

std::string resolve_out_path(const std::string& out) {
  if (out.empty()) return out;
  const char* dir = std::getenv("WITTKIT_OUT");
  if (dir && *dir && out.front() != '/') return std::string(dir) + "/" + out;
  return out;
}

void emit(const Json& doc, const std::string& out) {
  std::string path = resolve_out_path(out);
  if (path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << doc.dump(2) << "\n";
  }
}

int finish(const Json& failures) {
  if (failures.empty()) return 0;
  std::cerr << Json{{"failures", failures}}.dump() << "\n";
  return 1;
}

// --- single-record commands -------------------------------------------------

Json kgroup_record(long long pv, long long m, long long q, bool& ok) {
  Prime p(pv);
  FinAbPGroup g = relative_k(p, m, q);
  bool length_ok = (q >= 1 && q % 2 == 1) ? g.length() == (m - 1) * ((q - 1) / 2 + 1)
                                          : g.trivial();
  bool snf_ok = (relative_k_via_snf(p, m, q) == g);
  ok = length_ok && snf_ok;
  return Json{{"p", pv},
              {"m", m},
              {"q", q},
              {"group", json_of(g)},
              {"length", g.length()},
              {"ok", ok}};
}

Json map_record(long long pv, long long m, long long n, long long q, bool& ok) {
  Prime p(pv);
  Json rec{{"p", pv}, {"m", m}, {"n", n}, {"q", q}};
  if (q < 1 || q % 2 == 0) {
    rec["group"] = json_of(FinAbPGroup{pv, {}});
    rec["is_zero"] = true;
    rec["ok"] = ok = true;
    return rec;
  }
  TransferMap t = transfer_map(p, m, n, q);
  auto [ker, coker] = kernel_cokernel(t);
  auto [ker2, coker2] = kernel_cokernel_via_snf(t);
  const long long i = (q - 1) / 2;
  ok = (ker == ker2) && (coker == coker2) &&
       (ker.length() - coker.length() == (m - n) * (i + 1));
  rec["group"] = json_of(relative_k(p, m, q));
  rec["map"] = json_of(t);
  rec["ker"] = json_of(ker);
  rec["coker"] = json_of(coker);
  rec["is_zero"] = t.is_zero();
  rec["ok"] = ok;
  return rec;
}

Json divisor_record(long long pv, long long m, long long n, long long i, bool& ok) {
  Prime p(pv);
  Divisor alpha = twist_divisor(p, m, n, i);
  Divisor wn = witt_divisor(n * (i + 1), p);
  bool remark_ok = true;  // counting identity for every order
  for (long long j = 1; j <= m * (i + 1) && remark_ok; ++j) {
    if (j % pv == 0) continue;
    long long cnt = 0;
    for (long long h = 0; h < i; ++h)
      for (Int pr = 1; pr * j <= Int(m) * (h + 1); pr *= pv)
        if (Int(n) * (h + 1) < pr * j) ++cnt;
    remark_ok = (cnt == alpha.order(j));
  }
  ok = alpha.is_effective() && remark_ok;
  return Json{{"p", pv},
              {"m", m},
              {"n", n},
              {"i", i},
              {"alpha", json_of(alpha)},
              {"witt", json_of(wn)},
              {"geq", geq(alpha, wn)},
              {"kills", twist_dominates(p, m, n, i)},
              {"ok", ok}};
}

Json bar_record(long long m, long long i, long long n, bool& ok) {
  ChainComplex c = bar_complex(m, i);
  Homology h = homology(c);
  Homology pred = predicted_homology(m, i);
  bool match = homology_equal(h, pred);
  bool euler = euler_characteristic_of_basis(c) == euler_characteristic_of_homology(h);
  ok = match && euler;
  Json rec{{"m", m}, {"i", i}, {"homology", json_of(h)}, {"predicted", json_of(pred)},
           {"match", match}};
  if (n > 0) {
    InducedMap f = induced_map(m, n, i);  // validates the chain-map identity
    Json mats = Json::array();
    for (std::size_t k = 0; k < f.on_homology.size(); ++k) {
      const Mat& M = f.on_homology[k];
      if (M.rows == 0 || M.cols == 0) continue;
      Json rows = Json::array();
      for (long long r = 0; r < M.rows; ++r) {
        Json row = Json::array();
        for (long long col = 0; col < M.cols; ++col) row.push_back(json_int(M(r, col)));
        rows.push_back(row);
      }
      mats.push_back(Json{{"deg", k}, {"matrix", rows}});
    }
    rec["induced"] = Json{{"n", n}, {"chain_map_ok", true}, {"on_homology", mats}};
  }
  rec["ok"] = ok;
  return rec;
}

Json thresholds_record(long long pv, long long m, long long n, bool& ok) {
  Prime p(pv);
  Json rec{{"p", pv}, {"n", n}};
  ok = true;
  if (m == 0) {  // m omitted: the m-threshold for this n
    long long m0 = m_threshold(p, n);
    Json cert;
    cert["holds"] = Json::array();
    for (long long mm = m0; mm <= m0 + 5; ++mm) {
      for (long long i = 1; i <= 20; ++i) ok = ok && twist_dominates(p, mm, n, i);
      cert["holds"].push_back(mm);
    }
    auto witness = domination_witness(p, m0 - 1, n);
    if (m0 - 1 > n) {
      ok = ok && witness.has_value();
      if (witness)
        cert["fails_at"] = Json{{"m", m0 - 1}, {"i", witness->first}, {"j", witness->second}};
    }
    rec["m0"] = Json{{"value", m0}, {"certificate", cert}};
    rec["ok"] = ok;
    return rec;
  }
  rec["m"] = m;
  if (n > 1) {
    IThreshold it = i_threshold(p, m, n);
    Json cert;
    cert["lower_bound"] = it.lower_bound;
    ok = ok && it.i0 >= it.lower_bound;
    if (it.i0 >= 1) {
      cert["fails_at"] = it.i0 - 1;
      ok = ok && !twist_dominates(p, m, n, it.i0 - 1);
    }
    for (long long i = it.i0; i <= it.i0 + 10; ++i) ok = ok && twist_dominates(p, m, n, i);
    rec["i0"] = Json{{"value", it.i0}, {"certificate", cert}};
  } else {
    rec["i0"] = nullptr;  // defined only for m > n > 1
  }
  QThreshold qt = q_threshold(p, m, n);
  Json qrec{{"value", qt.q0}, {"beyond_theorem", qt.beyond_theorem}};
  if (qt.largest_failing_q >= 0) {
    qrec["largest_failing_q"] = qt.largest_failing_q;
    ok = ok && !transfer_is_zero(p, m, n, qt.largest_failing_q);
  }
  for (long long q = qt.q0; q <= qt.q0 + 20; ++q) ok = ok && transfer_is_zero(p, m, n, q);
  rec["q0"] = qrec;
  rec["ok"] = ok;
  return rec;
}

Json crosscheck_record(long long pv, long long m, long long n, long long i, int umax,
                       bool& ok) {
  Prime p(pv);
  int u = (umax > 0) ? umax : stabilization_level(p, std::max(m, n), i) + 1;
  long long mismatches = 0, cells = 0;
  for (long long j = 1; j <= m * (i + 1); ++j) {
    if (j % pv == 0) continue;
    ValuationTriple t = valuation_triple(p, m, n, i, j, u);
    ++cells;
    if (!t.agree()) ++mismatches;
  }
  ok = (mismatches == 0);
  return Json{{"p", pv}, {"m", m}, {"n", n}, {"i", i}, {"u", u},
              {"checked", cells}, {"mismatches", mismatches}, {"ok", ok}};
}

// --- sweep -------------------------------------------------------------------

struct SweepCell {
  long long p = 0, m = 0, n = 0, q = 0, i = 0;
};

void write_csv(std::ostream& os, const std::string& cmd, const std::vector<Json>& rows) {
  std::vector<std::string> cols;
  if (cmd == "kgroup") cols = {"p", "m", "q", "length", "ok"};
  else if (cmd == "map") cols = {"p", "m", "n", "q", "is_zero", "ok"};
  else if (cmd == "divisor") cols = {"p", "m", "n", "i", "kills", "ok"};
  else if (cmd == "bar") cols = {"m", "i", "match", "ok"};
  else cols = {"p", "m", "n", "i", "u", "checked", "mismatches", "ok"};
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << "\n";
  for (const Json& r : rows) {
    for (std::size_t k = 0; k < cols.size(); ++k)
      os << (k ? "," : "") << (r.contains(cols[k]) ? r.at(cols[k]).dump() : "");
    os << "\n";
  }
}

int run_sweep(const std::string& cmd, const std::vector<long long>& ps,
              const std::vector<long long>& ms, const std::vector<long long>& ns,
              const std::vector<long long>& qs, const std::vector<long long>& is,
              int umax, unsigned jobs, const std::string& format, const std::string& out) {
  std::vector<SweepCell> cells;
  if (cmd == "kgroup") {
    for (long long p : ps)
      for (long long m : ms)
        for (long long q : qs) cells.push_back({p, m, 0, q, 0});
  } else if (cmd == "map") {
    for (long long p : ps)
      for (long long m : ms)
        for (long long n : ns)
          for (long long q : qs)
            if (m > n) cells.push_back({p, m, n, q, 0});
  } else if (cmd == "divisor" || cmd == "crosscheck") {
    for (long long p : ps)
      for (long long m : ms)
        for (long long n : ns)
          for (long long i : is)
            if (m > n) cells.push_back({p, m, n, 0, i});
  } else if (cmd == "bar") {
    for (long long m : ms)
      for (long long i : is) cells.push_back({0, m, 0, 0, i});
  } else {
    throw CLI::ValidationError("unknown sweep command: " + cmd);
  }
  if (cells.empty()) throw CLI::ValidationError("sweep: empty cell set");

  std::vector<Json> rows(cells.size());
  std::vector<char> oks(cells.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      const SweepCell& c = cells[k];
      bool ok = false;
      try {
        if (cmd == "kgroup") rows[k] = kgroup_record(c.p, c.m, c.q, ok);
        else if (cmd == "map") rows[k] = map_record(c.p, c.m, c.n, c.q, ok);
        else if (cmd == "divisor") rows[k] = divisor_record(c.p, c.m, c.n, c.i, ok);
        else if (cmd == "bar") rows[k] = bar_record(c.m, c.i, 0, ok);
        else rows[k] = crosscheck_record(c.p, c.m, c.n, c.i, umax, ok);
      } catch (const std::exception& e) {
        rows[k] = Json{{"error", e.what()}, {"ok", false}};
        ok = false;
      }
      oks[k] = ok ? 1 : 0;
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::string path = resolve_out_path(out);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    os = &file;
  }
  if (format == "csv") {
    write_csv(*os, cmd, rows);
  } else {
    Json all = Json::array();
    for (const Json& r : rows) all.push_back(r);
    *os << all.dump(2) << "\n";
  }

  Json failures = Json::array();
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (!oks[k])
      failures.push_back(Json{{"cell", Json{{"p", cells[k].p}, {"m", cells[k].m},
                                             {"n", cells[k].n}, {"q", cells[k].q},
                                             {"i", cells[k].i}}}});
  return finish(failures);
}

// --- selftest ----------------------------------------------------------------

int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  Prime p2(2), p3(3);
  check("arith.factor_length", factor_length(p2, 4, 0, 1) == 3 &&
                                   factor_length(p3, 3, 1, 2) == 2 &&
                                   factor_length(p2, 1, 0, 5) == 0);
  check("arith.level_length", level_length(p2, Int(5), 3, 2) == 2 &&
                                  level_length(p2, Int(8), 2, 1) == 0 &&
                                  level_length(p2, Int(2), 5, 3) == 5);

  TruncationSet S12 = TruncationSet::segment(2);
  auto two = add(WittVectorZ::one(S12), WittVectorZ::one(S12));
  check("witt.add", two.coord(1) == 2 && two.coord(2) == -1);
  auto fp_two = add(WittVectorFp::one(p2, S12), WittVectorFp::one(p2, S12));
  check("witt.cyclic_value", p_typical_value(fp_two) == 2);
  auto d = eta_decompose(fp_two);
  check("witt.eta_roundtrip", eta_recompose(d) == fp_two &&
                                  witt_fp_from_json(json_of(fp_two)) == fp_two &&
                                  decomp_from_json(json_of(d)) == d);

  check("divisor.witt", witt_divisor(4, p2).order(1) == 3 &&
                            witt_divisor(4, p2).order(3) == 1 &&
                            witt_divisor(6, p3).total_order() == 6);
  check("kgroups.k1_oracle", relative_k(p2, 4, 1) == k1_units_oracle(p2, 4) &&
                                 relative_k(p3, 4, 1) == k1_units_oracle(p3, 4));
  check("kgroups.snf_route", relative_k(p2, 6, 7) == relative_k_via_snf(p2, 6, 7) &&
                                 relative_k(p3, 5, 5) == relative_k_via_snf(p3, 5, 5));
  {
    auto t = transfer_map(p2, 4, 2, 1);
    auto [ker, coker] = kernel_cokernel(t);
    auto [ker2, coker2] = kernel_cokernel_via_snf(t);
    check("kgroups.ker_coker", ker == ker2 && coker == coker2 &&
                                   ker.length() - coker.length() == 2);
  }
  check("kgroups.crosscheck", valuation_triple(p2, 3, 1, 2, 1, 4).agree() &&
                                  valuation_triple(p3, 5, 2, 3, 1, 5).agree());
  {
    bool bar_ok = true;
    for (long long m = 2; m <= 3 && bar_ok; ++m)
      for (long long i = 1; i <= 5 && bar_ok; ++i)
        bar_ok = homology_equal(homology(bar_complex(m, i)), predicted_homology(m, i));
    check("cyclicbar.predicted", bar_ok);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Witt vector / relative K-group calculator"};
  app.require_subcommand(1);

  std::string format = "json", out;
  long long pv = 2, m = 0, n = 0, q = 0, i = 0;
  int umax = 0;
  unsigned jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "output path (WITTKIT_OUT prefixes relative paths)");
  };

  auto* kgroup = app.add_subcommand("kgroup", "relative K-group of F_p[x]/(x^m)");
  kgroup->add_option("-p", pv)->required();
  kgroup->add_option("-m", m)->required()->check(CLI::PositiveNumber);
  kgroup->add_option("-q", q)->required();
  add_common(kgroup);

  auto* mapc = app.add_subcommand("map", "transfer map, kernel and cokernel");
  mapc->add_option("-p", pv)->required();
  mapc->add_option("-m", m)->required()->check(CLI::PositiveNumber);
  mapc->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  mapc->add_option("-q", q)->required();
  add_common(mapc);

  auto* thr = app.add_subcommand("thresholds", "vanishing thresholds i0 / q0, or m0 when -m is omitted");
  thr->add_option("-p", pv)->required();
  thr->add_option("-m", m)->check(CLI::PositiveNumber);
  thr->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  add_common(thr);

  auto* divc = app.add_subcommand("divisor", "twist divisor and the domination test");
  divc->add_option("-p", pv)->required();
  divc->add_option("-m", m)->required()->check(CLI::PositiveNumber);
  divc->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  divc->add_option("-i", i)->required()->check(CLI::NonNegativeNumber);
  add_common(divc);

  auto* bar = app.add_subcommand("bar", "cyclic bar homology in one weight");
  bar->add_option("-m", m)->required()->check(CLI::PositiveNumber);
  bar->add_option("-i", i)->required()->check(CLI::PositiveNumber);
  bar->add_option("-n", n)->check(CLI::PositiveNumber);
  add_common(bar);

  std::string sweep_cmd, sp = "2", sm = "1", sn = "1", sq = "1", si = "0";
  auto* sweep = app.add_subcommand("sweep", "grid evaluation with one row per cell");
  sweep->add_option("--cmd", sweep_cmd)
      ->required()
      ->check(CLI::IsMember({"kgroup", "map", "divisor", "bar", "crosscheck"}));
  sweep->add_option("-p", sp, "range: 2 | 2,3 | 2..5");
  sweep->add_option("-m", sm);
  sweep->add_option("-n", sn);
  sweep->add_option("-q", sq);
  sweep->add_option("-i", si);
  sweep->add_option("--umax", umax);
  sweep->add_option("--jobs", jobs);
  sweep->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  add_common(sweep);

  auto* self = app.add_subcommand("selftest", "internal consistency battery");

  CLI11_PARSE(app, argc, argv);

  try {
    bool ok = true;
    if (kgroup->parsed()) {
      Json rec = kgroup_record(pv, m, q, ok);
      emit(rec, out);
      return finish(ok ? Json::array() : Json::array({rec}));
    }
    if (mapc->parsed()) {
      Json rec = map_record(pv, m, n, q, ok);
      emit(rec, out);
      return finish(ok ? Json::array() : Json::array({rec}));
    }
    if (thr->parsed()) {
      Json rec = thresholds_record(pv, m, n, ok);
      emit(rec, out);
      return finish(ok ? Json::array() : Json::array({rec}));
    }
    if (divc->parsed()) {
      Json rec = divisor_record(pv, m, n, i, ok);
      emit(rec, out);
      return finish(ok ? Json::array() : Json::array({rec}));
    }
    if (bar->parsed()) {
      Json rec = bar_record(m, i, n, ok);
      emit(rec, out);
      return finish(ok ? Json::array() : Json::array({rec}));
    }
    if (sweep->parsed())
      return run_sweep(sweep_cmd, parse_range(sp), parse_range(sm), parse_range(sn),
                       parse_range(sq), parse_range(si), umax, jobs, format, out);
    if (self->parsed()) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
