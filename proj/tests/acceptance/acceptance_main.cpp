// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "corefeval/formats.hpp"
#include "corefeval/metrics.hpp"
#include "property_suite.hpp"

using namespace corefeval;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the failed sub-checks of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  void expect_eq(const Fraction& got, const Rational& want, const std::string& what) {
    expect(got.exact() == want,
           what + " = " + got.str() + ", expected " + to_string(want));
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  bool report() const {
    const bool ok = failures_.empty() && checks_ > 0;
    std::cout << (ok ? "PASS " : "FAIL ") << name_ << " (" << checks_ << " checks";
    for (const auto& n : notes_) std::cout << "; " << n;
    std::cout << ")\n";
    for (const auto& f : failures_) std::cout << "     - " << f << "\n";
    return ok;
  }

 private:
  std::string name_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(COREFEVAL_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

std::vector<MentionId> ids(int first, int last) {
  std::vector<MentionId> out;
  for (int i = first; i <= last; ++i) out.push_back(std::to_string(i));
  return out;
}

Partition partition(int n, const std::vector<std::vector<MentionId>>& classes) {
  return build_partition(ids(1, n), classes);
}

Partition all_singletons(int n) { return partition(n, {}); }

Partition one_class(int n) { return partition(n, {ids(1, n)}); }

bool table3() {
  Criterion c("toy example gives the six reference scores exactly");
  const auto start = Clock::now();
  auto key = to_partition(parse_partition_json(slurp("toy17_key.json")));
  auto resp = to_partition(parse_partition_json(slurp("toy17_response.json")));
  auto r = evaluate(key, resp, XpsMode::Reconstructed);
  const double elapsed = seconds_since(start);

  c.expect_eq(r.muc.recall, q(11, 13), "MRS");
  c.expect_eq(r.muc.precision, q(11, 14), "MPS");
  c.expect_eq(r.core.recall, q(10, 13), "CRS");
  c.expect_eq(r.core.precision, q(7, 14), "CPS");
  c.expect_eq(r.exclusive.recall, q(9, 17), "XRS");
  c.expect_eq(r.exclusive.precision, q(9, 17), "XPS");
  c.expect(r.core.precision.str() == "7/14", "CPS printed as " + r.core.precision.str());
  const std::vector<std::pair<const Fraction*, std::string>> shown = {
      {&r.muc.recall, "0.85"},       {&r.muc.precision, "0.79"},
      {&r.core.recall, "0.77"},      {&r.core.precision, "0.50"},
      {&r.exclusive.recall, "0.53"}, {&r.exclusive.precision, "0.53"}};
  for (const auto& [f, text] : shown)
    c.expect(format_fixed(f->exact(), 2) == text,
             f->str() + " displays as " + format_fixed(f->exact(), 2));
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  c.note("runtime " + std::to_string(elapsed * 1000).substr(0, 5) + " ms");
  return c.report();
}

bool table2() {
  Criterion c("two-referent key against all-singleton and merged responses");
  auto key = partition(10, {ids(1, 5), ids(6, 10)});

  auto split = evaluate(key, all_singletons(10));
  c.expect_eq(split.muc.recall, q(0), "(1) MRS");
  c.expect_eq(split.muc.precision, q(1), "(1) MPS");
  c.expect_eq(split.core.recall, q(0), "(1) CRS");
  c.expect_eq(split.core.precision, q(1), "(1) CPS");

  auto merged = evaluate(key, one_class(10));
  c.expect_eq(merged.muc.recall, q(1), "(2) MRS");
  c.expect_eq(merged.muc.precision, q(8, 9), "(2) MPS");
  c.expect_eq(merged.core.recall, q(1), "(2) CRS");
  c.expect_eq(merged.core.precision, q(4, 9), "(2) CPS");
  return c.report();
}

bool merged_147() {
  Criterion c("147 mentions in 15 key classes against one response class");
  std::mt19937 rng(147);
  for (int profile = 0; profile < 20; ++profile) {
    // 15 positive sizes summing to 147: cut points in 1..146
    std::vector<int> cuts(146);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(14);
    cuts.push_back(0);
    cuts.push_back(147);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::vector<MentionId>> classes;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      classes.push_back(ids(cuts[i] + 1, cuts[i + 1]));
    auto key = partition(147, classes);
    auto r = evaluate(key, one_class(147));
    const auto tag = "profile " + std::to_string(profile) + " ";
    c.expect(key.class_count() == 15, tag + "has " + std::to_string(key.class_count()) + " classes");
    c.expect_eq(r.muc.precision, q(132, 146), tag + "MPS");
    c.expect_eq(r.muc.recall, q(1), tag + "MRS");
    c.expect_eq(r.core.recall, q(1), tag + "CRS");
  }
  c.note("MPS 132/146 = " + format_fixed(q(132, 146), 3));
  return c.report();
}

bool exclusive_bounds() {
  Criterion c("exclusive scores of one class against singletons are 1/n");
  for (int n : {2, 10, 100}) {
    const auto tag = "n=" + std::to_string(n) + " ";
    c.expect_eq(evaluate(one_class(n), all_singletons(n)).exclusive.recall, q(1, n),
                tag + "XRS");
    c.expect_eq(evaluate(all_singletons(n), one_class(n)).exclusive.precision, q(1, n),
                tag + "swapped XPS");
  }
  return c.report();
}

bool per_class_example() {
  Criterion c("six-mention referent split two ways");
  auto key = partition(6, {ids(1, 6)});
  auto scattered = evaluate(key, partition(6, {ids(1, 3)}));
  c.expect_eq(scattered.muc.recall, q(2, 5), "{1,2,3},{4},{5},{6} MRS");
  c.expect_eq(scattered.core.recall, q(2, 5), "{1,2,3},{4},{5},{6} CRS");
  auto halves = evaluate(key, partition(6, {ids(1, 3), ids(4, 6)}));
  c.expect_eq(halves.muc.recall, q(4, 5), "{1,2,3},{4,5,6} MRS");
  c.expect_eq(halves.core.recall, q(2, 5), "{1,2,3},{4,5,6} CRS");
  return c.report();
}

bool distributional() {
  Criterion c("toy example distributional figures");
  auto key = to_partition(parse_partition_json(slurp("toy17_key.json")));
  auto resp = to_partition(parse_partition_json(slurp("toy17_response.json")));
  auto r = evaluate(key, resp);
  c.expect_eq(r.overlap, q(13, 17), "overlap");
  c.expect(r.d_error.label == DErrorLabel::Precision,
           std::string("d-error label ") + std::string(to_string(r.d_error.label)));
  c.expect(r.d_error.magnitude == q(1, 2),
           "d-error magnitude " + to_string(r.d_error.magnitude));
  c.note("overlap " + format_fixed(r.overlap.exact(), 2) + ", d-error " +
         format_fixed(r.d_error.magnitude, 2) + " " +
         std::string(to_string(r.d_error.label)));
  return c.report();
}

bool property_suites() {
  Criterion c("randomized invariants, 1000 pairs each, universes up to 200");
  constexpr int kTrials = 1000;
  const auto start = Clock::now();
  const std::vector<std::pair<std::string, properties::Check>> checks = {
      {"scores in [0,1]", properties::bounded},
      {"CRS <= MRS and CPS <= MPS", properties::core_not_above_muc},
      {"MUC numerator identity", properties::muc_numerators_equal},
      {"extension invariance", properties::extension_invariant},
      {"identity scores one", properties::identity_scores_one},
      {"exclusive assignment injective", properties::exclusive_assignment_sound},
      {"overlap symmetry and d-error antisymmetry", properties::distribution_symmetry},
  };
  unsigned seed = 1000;
  for (const auto& [name, check] : checks) {
    auto o = properties::run(check, kTrials, ++seed);
    c.expect(o.ok() && o.trials >= kTrials, name + ": " + o.first_failure);
  }
  auto small = properties::run(properties::exclusive_assignment_sound, kTrials, ++seed, 6);
  c.expect(small.ok(), "exclusive assignment on small instances: " + small.first_failure);
  auto sgml = properties::sgml_closure(kTrials, ++seed);
  c.expect(sgml.ok() && sgml.trials >= kTrials,
           "SGML closure equals union-find: " + sgml.first_failure);
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "combined runtime " + std::to_string(elapsed) + " s");
  c.note("runtime " + std::to_string(elapsed).substr(0, 5) + " s");
  return c.report();
}

bool printed_xps() {
  Criterion c("printed exclusive precision formula gives 10/17 on the toy example");
  auto key = to_partition(parse_partition_json(slurp("toy17_key.json")));
  auto resp = to_partition(parse_partition_json(slurp("toy17_response.json")));
  auto printed = evaluate(key, resp, XpsMode::Printed);
  auto reconstructed = evaluate(key, resp, XpsMode::Reconstructed);
  c.expect_eq(printed.exclusive.precision, q(10, 17), "printed XPS");
  c.expect(printed.exclusive.precision.exact() != reconstructed.exclusive.precision.exact(),
           "printed and reconstructed XPS coincide");
  return c.report();
}

}  // namespace

int main() {
  int failed = 0;
  for (auto criterion : {table3, table2, merged_147, exclusive_bounds,
                         per_class_example, distributional, property_suites,
                         printed_xps}) {
    bool ok = false;
    try {
      ok = criterion();
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion raised: " << e.what() << "\n";
    }
    failed += ok ? 0 : 1;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << 8 - failed << "/8 criteria\n";
  return failed ? 1 : 0;
}
