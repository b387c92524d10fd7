#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "sentinel/error.hpp"
#include "sentinel/lightcurve.hpp"
#include "sentinel/lightcurve_io.hpp"
#include "sentinel/synthgen.hpp"
#include "sentinel/text_io.hpp"
#include "test_support.hpp"

using namespace sentinel;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kIoError;
}

std::vector<Observation> basic_obs() {
  return {{-3.0, 1.0, 1.0, Passband::g}, {-3.0, 1.0, 1.0, Passband::r}, {2.0, 5.0, 1.0, Passband::g},
          {2.0, 4.0, 1.0, Passband::r}};
}

Dataset random_dataset(std::uint64_t seed) {
  synthgen::ClassTemplate t;
  t.name = "cls";
  t.param_mean[0] << std::log(100.0), 0.0, 5.0, std::log(20.0), std::log(3.0), std::log(0.01);
  t.param_mean[1] = t.param_mean[0];
  t.param_cov[0] = bazin::Matrix6::Identity() * 0.01;
  t.param_cov[1] = t.param_cov[0];
  synthgen::GenSpec spec;
  spec.templates = {t};
  spec.n_per_class = 5;
  spec.seed = seed;
  spec.dropout_prob = 0.2;
  return synthgen::generate_population(spec);
}

}  // namespace

// =============================================================================
// Validation
// =============================================================================

TEST(LightCurve, SortsObservations) {
  auto obs = basic_obs();
  std::reverse(obs.begin(), obs.end());
  const LightCurve lc("a", "c", obs);
  EXPECT_TRUE(std::is_sorted(lc.observations().begin(), lc.observations().end(), observation_less));
  EXPECT_EQ(lc.count(Passband::g), 2u);
}

TEST(LightCurve, RejectsInvalidInput) {
  auto obs = basic_obs();
  obs[0].flux_err = 0.0;
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kNonPositiveFluxError);

  obs = basic_obs();
  obs[0].time = -70.5;
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kTimeOutOfRange);

  obs = basic_obs();
  obs.push_back(obs[0]);
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kDuplicateObservation);

  obs = basic_obs();
  obs.resize(2);  // only pre-trigger
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kInvalidLightCurve);

  obs = {{1.0, 1.0, 1.0, Passband::g}, {2.0, 1.0, 1.0, Passband::g}};
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kInvalidLightCurve);

  obs = basic_obs();
  obs[1].flux = std::nan("");
  EXPECT_EQ(code_of([&] { LightCurve("a", "c", obs); }), ErrorCode::kInvalidLightCurve);
}

TEST(LightCurve, WindowEdgesAreValid) {
  std::vector<Observation> obs{{-70.0, 1.0, 1.0, Passband::g}, {80.0, 1.0, 1.0, Passband::r}};
  EXPECT_NO_THROW(LightCurve("a", "c", obs));
}

TEST(Passband, ParseAndPrint) {
  EXPECT_EQ(parse_passband("g"), Passband::g);
  EXPECT_EQ(to_string(Passband::r), "r");
  EXPECT_EQ(code_of([] { parse_passband("i"); }), ErrorCode::kUnknownPassband);
}

// =============================================================================
// Slicing
// =============================================================================

TEST(Slice, InclusiveHorizon) {
  const LightCurve lc("a", "c", basic_obs());
  EXPECT_EQ(slice_until(lc, -3.0).observations().size(), 2u);
  EXPECT_EQ(slice_until(lc, 1.9).observations().size(), 2u);
  EXPECT_EQ(slice_until(lc, 2.0).observations().size(), 4u);
  EXPECT_TRUE(slice_until(lc, -10.0).empty());
}

TEST(Slice, NestedSliceAndRange) {
  const LightCurve lc("a", "c", basic_obs());
  const auto outer = slice_until(lc, 2.0);
  EXPECT_EQ(slice_until(outer, 0.0).observations().size(), 2u);
  EXPECT_EQ(code_of([&] { slice_until(lc, 81.0); }), ErrorCode::kHorizonOutOfRange);
  EXPECT_TRUE(slice_until(lc, 0.0).insufficient());
}

TEST(Dataset, QueriesAndGridSize) {
  const Dataset d({LightCurve("a", "x", basic_obs()), LightCurve("b", "y", basic_obs()),
                   LightCurve("c", "x", basic_obs())});
  EXPECT_EQ(d.class_labels(), (std::set<std::string>{"x", "y"}));
  EXPECT_EQ(d.of_class("x").size(), 2u);
  EXPECT_EQ(d.find("b")->class_label(), "y");
  EXPECT_EQ(d.find("zz"), nullptr);
  EXPECT_EQ(Dataset::n_time_steps(), 51u);
  EXPECT_EQ(Dataset::n_passbands(), 2u);
}

// =============================================================================
// Serialisation
// =============================================================================

TEST(DatasetIo, CsvRoundTripIsExact) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = random_dataset(seed);
    const auto dir = fixtures::scratch_dir("csv_rt");
    save_dataset(d, dir / "d.csv", DatasetFormat::kCsv);
    const auto back = load_dataset(dir / "d.csv", DatasetFormat::kCsv);
    EXPECT_EQ(back, d);
    EXPECT_EQ(dataset_to_csv(back), dataset_to_csv(d));
  }
}

TEST(DatasetIo, JsonRoundTripIsExact) {
  const auto d = random_dataset(9);
  const auto dir = fixtures::scratch_dir("json_rt");
  save_dataset(d, dir / "d.json", format_for(dir / "d.json"));
  EXPECT_EQ(load_dataset(dir / "d.json", DatasetFormat::kJson), d);
}

TEST(DatasetIo, UnsortedRowsAreSortedWithWarning) {
  const auto dir = fixtures::scratch_dir("unsorted");
  text::write_file_atomic(dir / "d.csv",
                          "transient_id,class_label,time,passband,flux,flux_err\n"
                          "a,c,5,g,1,1\n"
                          "a,c,-1,g,1,1\n"
                          "a,c,-1,r,1,1\n");
  std::vector<std::string> warnings;
  const auto d = load_dataset(dir / "d.csv", DatasetFormat::kCsv, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(d.light_curves()[0].observations()[0].time, -1.0);
}

TEST(DatasetIo, ColumnsMatchedByName) {
  const auto dir = fixtures::scratch_dir("reorder");
  text::write_file_atomic(dir / "d.csv",
                          "flux_err,flux,passband,time,class_label,transient_id\n"
                          "1,2,g,-1,c,a\n"
                          "1,3,r,2,c,a\n");
  const auto d = load_dataset(dir / "d.csv", DatasetFormat::kCsv);
  EXPECT_EQ(d.light_curves()[0].observations()[1].flux, 3.0);
}

TEST(DatasetIo, ErrorsNameTheProblem) {
  const auto dir = fixtures::scratch_dir("bad_csv");
  text::write_file_atomic(dir / "a.csv", "transient_id,time,passband,flux,flux_err\na,1,g,1,1\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir / "a.csv", DatasetFormat::kCsv); }), ErrorCode::kMissingColumn);
  text::write_file_atomic(dir / "b.csv", "transient_id,class_label,time,passband,flux,flux_err\na,c,1,z,1,1\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir / "b.csv", DatasetFormat::kCsv); }), ErrorCode::kUnknownPassband);
  text::write_file_atomic(dir / "c.csv", "transient_id,class_label,time,passband,flux,flux_err\na,c,1,g,1,-2\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir / "c.csv", DatasetFormat::kCsv); }), ErrorCode::kNonPositiveFluxError);
  text::write_file_atomic(dir / "d.csv", "transient_id,class_label,time,passband,flux,flux_err\na,c,abc,g,1,1\n");
  EXPECT_EQ(code_of([&] { load_dataset(dir / "d.csv", DatasetFormat::kCsv); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([&] { load_dataset(dir / "nope.csv", DatasetFormat::kCsv); }), ErrorCode::kIoError);
}

TEST(TextIo, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(text::parse_double(text::format_double(x), "x"), x);
  }
  EXPECT_EQ(text::format_double(3.0), "3");
}
