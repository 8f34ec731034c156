#include "bent/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace bent {

std::uint64_t function_space_size(const FiniteGroup& domain, const FiniteGroup& codomain) {
  std::uint64_t total = 1;
  for (int i = 0; i < domain.order; ++i) {
    if (total > kMaxExhaustive) return kMaxExhaustive + 1;
    total *= static_cast<std::uint64_t>(codomain.order);
  }
  return total;
}

FunctionEnumerator::FunctionEnumerator(const FiniteGroup& domain, const FiniteGroup& codomain,
                                       Partition part) {
  if (part.count < 1 || part.index < 0 || part.index >= part.count)
    fail(errc::invalid_parameter, "partition index must be in 0..count-1");
  total_ = function_space_size(domain, codomain);
  if (total_ > kMaxExhaustive)
    fail(errc::too_large, "function space |H|^|G| exceeds the exhaustive cap of " +
                              std::to_string(kMaxExhaustive));
  table_.domain = domain;
  table_.codomain = codomain;
  table_.values.assign(domain.order, 0);
  counter_ = static_cast<std::uint64_t>(part.index);
  stride_ = static_cast<std::uint64_t>(part.count);
  if (!done()) set_from_counter();
}

void FunctionEnumerator::advance() {
  counter_ += stride_;
  if (!done()) set_from_counter();
}

void FunctionEnumerator::set_from_counter() {
  // values[0] is the most significant base-|H| digit.
  const int nh = table_.codomain.order;
  std::uint64_t c = counter_;
  for (int x = table_.domain.order - 1; x >= 0; --x) {
    table_.values[x] = static_cast<int>(c % nh);
    c /= nh;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<int> random_function_values(std::uint64_t seed, std::uint64_t index, int domain_order,
                                        int codomain_order) {
  std::vector<int> values(domain_order);
  for (int x = 0; x < domain_order; ++x) {
    const std::uint64_t stream_pos = index * static_cast<std::uint64_t>(domain_order) + x;
    values[x] = static_cast<int>(splitmix64(seed ^ splitmix64(stream_pos + 1)) %
                                 static_cast<std::uint64_t>(codomain_order));
  }
  return values;
}

namespace {

struct WorkerTotals {
  std::uint64_t examined = 0;
  std::uint64_t pn_found = 0;
  std::uint64_t agreements = 0;
  std::uint64_t norm_only = 0;
  std::vector<Disagreement> disagreements;
};

struct SearchContext {
  const SearchJob& job;
  const FiniteGroup& g;
  const FiniteGroup& h;
  const DualTable& dg;
  const DualTable& dh;
  bool g_abelian, h_abelian;
};

void examine(const SearchContext& ctx, const FunctionTable& f, std::uint64_t counter, WorkerTotals& t) {
  const SearchJob& job = ctx.job;
  ++t.examined;

  std::optional<PnVerdict> oracle, bent;
  if (job.run_oracle) oracle = pn_oracle(f);
  if (job.run_bent) bent = bent_auto(f, ctx.dg, ctx.dh, job.tau);

  const bool pn = oracle ? oracle->is_pn : (bent && bent->is_pn);
  if (pn) ++t.pn_found;
  if (oracle && bent) {
    if (oracle->is_pn == bent->is_pn)
      ++t.agreements;
    else
      t.disagreements.push_back({counter, f.values, *oracle, *bent});
  }

  if (job.run_norm && (ctx.g_abelian || ctx.h_abelian)) {
    bool holds = true;
    if (ctx.h_abelian) holds = holds && norm_condition_nab_ab(f, ctx.dg, ctx.dh, job.tau).holds;
    if (ctx.g_abelian) holds = holds && norm_condition_ab_nab(f, ctx.dg, ctx.dh, job.tau).holds;
    const bool truth = oracle ? oracle->is_pn : pn;
    if (holds && !truth) ++t.norm_only;
  }
}

void run_shard(const SearchContext& ctx, Partition shard, WorkerTotals& t) {
  const SearchJob& job = ctx.job;
  if (job.mode == SearchJob::Mode::Exhaustive) {
    FunctionEnumerator en(ctx.g, ctx.h, shard);
    for (; !en.done(); en.advance()) examine(ctx, en.current(), en.counter(), t);
  } else {
    FunctionTable f;
    f.domain = ctx.g;
    f.codomain = ctx.h;
    for (std::uint64_t i = shard.index; i < job.sample_count; i += shard.count) {
      f.values = random_function_values(job.seed, i, ctx.g.order, ctx.h.order);
      examine(ctx, f, i, t);
    }
  }
}

}  // namespace

SearchReport run_search(const SearchJob& job) {
  const auto start = std::chrono::steady_clock::now();
  if (job.workers < 1) fail(errc::invalid_parameter, "worker count must be >= 1");
  if (job.partition.count < 1 || job.partition.index < 0 || job.partition.index >= job.partition.count)
    fail(errc::invalid_parameter, "partition index must be in 0..count-1");
  if (!job.run_oracle && !job.run_bent) fail(errc::invalid_parameter, "no criteria selected");

  const FiniteGroup g = group_from_spec(job.domain_spec);
  const FiniteGroup h = group_from_spec(job.codomain_spec);
  if (job.mode == SearchJob::Mode::Exhaustive && function_space_size(g, h) > kMaxExhaustive)
    fail(errc::too_large, "function space |H|^|G| exceeds the exhaustive cap of " +
                              std::to_string(kMaxExhaustive) + "; use random mode");
  const DualTable dg = irreps(g);
  const DualTable dh = irreps(h);

  SearchContext ctx{job, g, h, dg, dh, is_abelian(g), is_abelian(h)};

  // Thread w of W handles counters k + w*n (mod n*W) within the manual
  // k-of-n shard, so the union over threads is exactly the shard.
  const int threads = job.workers;
  std::vector<WorkerTotals> totals(threads);
  if (threads == 1) {
    run_shard(ctx, job.partition, totals[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      Partition shard{job.partition.index + w * job.partition.count, job.partition.count * threads};
      pool.emplace_back([&ctx, shard, &slot = totals[w], &err = errors[w]] {
        try {
          run_shard(ctx, shard, slot);
        } catch (...) {
          err = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  SearchReport report;
  report.domain_name = g.name;
  report.codomain_name = h.name;
  report.mode = job.mode == SearchJob::Mode::Exhaustive ? "exhaustive" : "random";
  if (job.run_oracle) report.criteria = "oracle";
  if (job.run_bent) report.criteria += report.criteria.empty() ? "bent" : ",bent";
  if (job.run_norm) report.criteria += ",norm";
  report.compared = job.run_oracle && job.run_bent;
  report.norm_applicable = job.run_norm && (ctx.g_abelian || ctx.h_abelian);
  report.seed = job.seed;
  if (job.mode == SearchJob::Mode::Random) report.generator = kGeneratorName;
  for (const auto& t : totals) {
    report.examined += t.examined;
    report.pn_found += t.pn_found;
    report.agreements += t.agreements;
    report.norm_only += t.norm_only;
    report.disagreements.insert(report.disagreements.end(), t.disagreements.begin(),
                                t.disagreements.end());
  }
  std::sort(report.disagreements.begin(), report.disagreements.end(),
            [](const Disagreement& a, const Disagreement& b) { return a.counter < b.counter; });
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

namespace {

void write_verdict(std::ostream& out, const char* tag, const PnVerdict& v) {
  out << tag << " pn " << (v.is_pn ? "true" : "false") << " method " << method_name(v.method);
  if (v.method == Method::Oracle) {
    if (!v.is_pn) out << " first_unbalanced_alpha " << v.first_unbalanced_alpha;
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v.max_residual);
    out << " max_residual " << buf;
    if (v.witness) out << " witness " << v.witness->detail;
  }
  out << "\n";
}

}  // namespace

void save_report(const SearchReport& r, std::ostream& out) {
  out << "summary\n";
  out << "domain " << r.domain_name << "\n";
  out << "codomain " << r.codomain_name << "\n";
  out << "mode " << r.mode << "\n";
  out << "criteria " << r.criteria << "\n";
  if (!r.generator.empty()) {
    out << "seed " << r.seed << "\n";
    out << "generator " << r.generator << "\n";
  }
  out << "examined " << r.examined << "\n";
  out << "pn " << r.pn_found << "\n";
  if (r.compared) {
    out << "agreements " << r.agreements << "\n";
    out << "disagreements " << r.disagreements.size() << "\n";
  }
  if (r.norm_applicable) out << "norm_only " << r.norm_only << "\n";
  out << "end\n";
  for (const auto& d : r.disagreements) {
    out << "disagreement\n";
    out << "counter " << d.counter << "\n";
    out << "fn";
    for (int v : d.values) out << " " << v;
    out << "\n";
    write_verdict(out, "oracle", d.oracle);
    write_verdict(out, "bent", d.bent);
    out << "end\n";
  }
}

void save_report(const SearchReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot open '" + path + "' for writing");
  save_report(r, out);
}

}  // namespace bent
