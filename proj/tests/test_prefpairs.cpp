#include <cmath>
#include <sstream>

#include "doctest.h"
#include "natcorpus/error.hpp"
#include "natcorpus/prefpairs.hpp"
#include "support/generators.hpp"

using namespace natcorpus;
using natcorpus::testing::reference_bleu;

namespace {

using Words = std::vector<std::string>;

PreferencePair synthetic_pair(double bleu, std::size_t chosen_len, std::size_t rejected_len) {
  PreferencePair pair;
  pair.bleu = bleu;
  pair.chosen_len = chosen_len;
  pair.rejected_len = rejected_len;
  return pair;
}

Words numbered(std::size_t n, const std::string& prefix = "w") {
  Words w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(prefix + std::to_string(i));
  return w;
}

}  // namespace

TEST_SUITE("prefpairs") {

TEST_CASE("sentence_bleu examples") {
  const Words abcd = {"a", "b", "c", "d"};
  const Words abcx = {"a", "b", "c", "x"};
  CHECK(sentence_bleu(abcd, abcd) == 1.0);
  CHECK(sentence_bleu(abcd, Words{"p", "q"}) == 0.0);
  CHECK(std::abs(sentence_bleu(abcd, abcx) - 0.6580370064762462) < 1e-12);
  CHECK(std::abs(reference_bleu(abcd, abcx) - 0.6580370064762462) < 1e-12);
  CHECK_THROWS_AS(sentence_bleu(Words{}, abcd), Error);
  CHECK_THROWS_AS(sentence_bleu(abcd, Words{}), Error);
}

TEST_CASE("brevity penalty applies only to short hypotheses") {
  const Words ref = {"a", "b", "c", "d", "e", "f"};
  const Words hyp = {"a", "b", "c"};
  // p1 = 1, p2 = 3/3, p3 = 2/2, p4 = 1/1; BP = exp(1 - 6/3)
  CHECK(std::abs(sentence_bleu(ref, hyp) - std::exp(-1.0)) < 1e-12);
  CHECK(sentence_bleu(hyp, ref) < 1.0);
  const Words longer = {"a", "b", "c", "d", "e", "f", "g"};
  CHECK(std::abs(sentence_bleu(ref, longer) - reference_bleu(ref, longer)) < 1e-12);
}

TEST_CASE("sentence_bleu matches the string-keyed scorer and stays in [0, 1]") {
  const auto fixture = natcorpus::testing::preference_fixture(41, 400);
  for (const auto& p : fixture) {
    const double b = sentence_bleu(p.chosen, p.rejected);
    CHECK(std::abs(b - reference_bleu(p.chosen, p.rejected)) < 1e-12);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(sentence_bleu(p.chosen, p.chosen) == 1.0);
  }
}

TEST_CASE("evaluate_pair examples and boundaries") {
  const FilterThresholds t;
  CHECK(evaluate_pair(synthetic_pair(0.5, 20, 20), t).kept);
  CHECK(evaluate_pair(synthetic_pair(0.5, 20, 20), t).reason == FilterReason::kOk);
  CHECK(evaluate_pair(synthetic_pair(0.15, 20, 20), t).reason == FilterReason::kBleuTooLow);
  CHECK(evaluate_pair(synthetic_pair(0.9, 20, 20), t).reason == FilterReason::kBleuTooHigh);
  CHECK(evaluate_pair(synthetic_pair(0.5, 9, 20), t).reason == FilterReason::kChosenTooShort);
  CHECK(evaluate_pair(synthetic_pair(0.5, 20, 9), t).reason == FilterReason::kRejectedTooShort);
  CHECK(evaluate_pair(synthetic_pair(0.5, 10, 10), t).kept);
  // length checks come first
  CHECK(evaluate_pair(synthetic_pair(0.95, 9, 9), t).reason == FilterReason::kChosenTooShort);
  CHECK(evaluate_pair(synthetic_pair(0.01, 12, 3), t).reason == FilterReason::kRejectedTooShort);
}

TEST_CASE("PreferencePair::make derives bleu and lengths") {
  const auto pair = PreferencePair::make("p", "c", "r", {"a", "b", "c", "d"}, {"a", "b", "c", "x"});
  CHECK(pair.chosen_len == 4);
  CHECK(pair.rejected_len == 4);
  CHECK(std::abs(pair.bleu - 0.6580370064762462) < 1e-12);
}

TEST_CASE("filter_dataset examples") {
  const auto empty = filter_dataset({}, FilterThresholds{});
  CHECK(empty.kept.empty());
  CHECK(empty.stats.total_records == 0);
  CHECK(empty.stats.kept == 0);
  CHECK(empty.stats.mean_bleu == 0.0);
  for (auto r : kRejectionReasons) CHECK(empty.stats.rejected_for(r) == 0);

  const std::vector<PreferencePair> three = {synthetic_pair(0.05, 20, 20), synthetic_pair(0.5, 20, 24),
                                             synthetic_pair(0.95, 20, 20)};
  const auto result = filter_dataset(three, FilterThresholds{});
  CHECK(result.kept.size() == 1);
  CHECK(result.stats.kept == 1);
  CHECK(result.stats.rejected_for(FilterReason::kBleuTooLow) == 1);
  CHECK(result.stats.rejected_for(FilterReason::kBleuTooHigh) == 1);
  CHECK(result.stats.rejected_for(FilterReason::kChosenTooShort) == 0);
  CHECK(result.stats.mean_bleu == 0.5);
  CHECK(result.stats.mean_chosen_len == 20.0);
  CHECK(result.stats.mean_rejected_len == 24.0);
}

TEST_CASE("filter statistics match an independent recount on a seeded fixture") {
  const auto fixture = natcorpus::testing::preference_fixture(100, 100);
  std::vector<PreferencePair> pairs;
  for (const auto& p : fixture) pairs.push_back(PreferencePair::make("", "", "", p.chosen, p.rejected));
  const auto result = filter_dataset(pairs, FilterThresholds{});

  std::size_t kept = 0, low = 0, high = 0, short_c = 0, short_r = 0;
  double bleu_sum = 0.0, chosen_sum = 0.0, rejected_sum = 0.0;
  for (const auto& p : fixture) {
    const double b = reference_bleu(p.chosen, p.rejected);
    if (p.chosen.size() < 10) {
      ++short_c;
    } else if (p.rejected.size() < 10) {
      ++short_r;
    } else if (b <= 0.15) {
      ++low;
    } else if (b >= 0.9) {
      ++high;
    } else {
      ++kept;
      bleu_sum += b;
      chosen_sum += static_cast<double>(p.chosen.size());
      rejected_sum += static_cast<double>(p.rejected.size());
    }
  }
  REQUIRE(kept > 0);
  CHECK(low > 0);
  CHECK(high > 0);
  CHECK(short_c > 0);
  CHECK(result.stats.total_records == 100);
  CHECK(result.stats.kept == kept);
  CHECK(result.stats.rejected_for(FilterReason::kBleuTooLow) == low);
  CHECK(result.stats.rejected_for(FilterReason::kBleuTooHigh) == high);
  CHECK(result.stats.rejected_for(FilterReason::kChosenTooShort) == short_c);
  CHECK(result.stats.rejected_for(FilterReason::kRejectedTooShort) == short_r);
  CHECK(result.stats.mean_bleu == doctest::Approx(bleu_sum / static_cast<double>(kept)).epsilon(1e-12));
  CHECK(result.stats.mean_chosen_len == doctest::Approx(chosen_sum / static_cast<double>(kept)));
  CHECK(result.stats.mean_rejected_len == doctest::Approx(rejected_sum / static_cast<double>(kept)));
}

TEST_CASE("widening the band never drops a kept pair; counts are conserved") {
  const auto fixture = natcorpus::testing::preference_fixture(9, 300);
  std::vector<PreferencePair> pairs;
  for (const auto& p : fixture) pairs.push_back(PreferencePair::make("", "", "", p.chosen, p.rejected));
  Sampler rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    FilterThresholds narrow{0.05 + 0.4 * static_cast<double>(rng.below(1000)) / 1000.0, 0.0,
                            static_cast<std::size_t>(rng.below(15))};
    narrow.bleu_high = narrow.bleu_low + 0.5 * static_cast<double>(rng.below(1000)) / 1000.0;
    FilterThresholds wide = narrow;
    wide.bleu_low -= 0.05;
    wide.bleu_high += 0.05;
    for (const auto& p : pairs) {
      if (evaluate_pair(p, narrow).kept) CHECK(evaluate_pair(p, wide).kept);
    }
    const auto stats = filter_dataset(pairs, narrow).stats;
    std::size_t sum = stats.kept;
    for (auto r : kRejectionReasons) sum += stats.rejected_for(r);
    CHECK(sum == stats.valid_records);
  }
}

TEST_CASE("filter_jsonl annotates records and counts malformed lines") {
  const auto chosen = numbered(12);
  auto rejected = chosen;
  rejected[3] = "changed";
  rejected[7] = "changed";
  nlohmann::ordered_json good = {{"prompt", "p"}, {"chosen", "c"}, {"rejected", "r"},
                                 {"chosen_tokens", chosen}, {"rejected_tokens", rejected}};
  nlohmann::ordered_json same = good;
  same["rejected_tokens"] = chosen;
  nlohmann::ordered_json missing = good;
  missing.erase("chosen_tokens");

  std::stringstream in;
  in << good.dump() << "\n\n" << same.dump() << "\n{not json\n" << missing.dump() << "\n";
  std::ostringstream kept;
  std::ostringstream dropped;
  const auto stats = filter_jsonl(in, FilterThresholds{}, &kept, &dropped);
  CHECK(stats.total_records == 4);
  CHECK(stats.malformed_records == 2);
  CHECK(stats.valid_records == 2);
  CHECK(stats.kept == 1);
  CHECK(stats.rejected_for(FilterReason::kBleuTooHigh) == 1);
  REQUIRE(stats.warnings.size() == 2);
  CHECK(stats.warnings[0].rfind("line 4:", 0) == 0);
  CHECK(stats.warnings[1].rfind("line 5:", 0) == 0);

  const auto kept_record = nlohmann::ordered_json::parse(kept.str());
  CHECK(kept_record["prompt"] == "p");
  CHECK(kept_record["bleu"].get<double>() == doctest::Approx(sentence_bleu(chosen, rejected)));
  CHECK_FALSE(kept_record.contains("reason"));
  const auto dropped_record = nlohmann::ordered_json::parse(dropped.str());
  CHECK(dropped_record["reason"] == "bleu_too_high");
  CHECK(dropped_record["bleu"].get<double>() == 1.0);

  const auto json = to_json(stats);
  CHECK(json["rejected"]["bleu_too_high"] == 1);
  CHECK(json["kept"] == 1);
}

}  // TEST_SUITE
