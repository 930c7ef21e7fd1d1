#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "slipline/slipline.hpp"

using namespace slipline;
using json = nlohmann::json;

TEST(Registry, EveryNameBuilds) {
    for (const auto& n : registry::stress_names()) EXPECT_NO_THROW(registry::make_stress(n)) << n;
    for (const auto& n : registry::velocity_names()) EXPECT_NO_THROW(registry::make_velocity(n)) << n;
}

TEST(Registry, RejectsUnknownNamesAndKeys) {
    EXPECT_THROW(registry::make_stress("nope"), ConfigError);
    EXPECT_THROW(registry::make_velocity("nope"), ConfigError);
    EXPECT_THROW(registry::make_stress("prandtl", {{"bogus", 1}}), ConfigError);
    EXPECT_THROW(registry::make_stress("prandtl", {{"c", "x"}}), ConfigError);
    EXPECT_THROW(registry::make_stress("prandtl", json::array()), ConfigError);
    EXPECT_THROW(registry::make_velocity("theta2", {{"branch", "other"}}), ConfigError);
    EXPECT_THROW(registry::make_stress("nadai_channel", {{"c", 2.0}, {"c2", 0.1}}), ConfigError);
    EXPECT_THROW(registry::make_stress("revuzhenko", json::object(), 1.0), ConfigError);
}

TEST(Registry, ParamsReachTheField) {
    const auto f = registry::make_stress("prandtl", {{"m", 0.7}, {"h", 2.0}, {"k", 1.3}});
    EXPECT_EQ(f.param("m"), 0.7);
    EXPECT_EQ(f.param("h"), 2.0);
    EXPECT_EQ(f.k, 1.3);
    EXPECT_EQ(registry::make_stress("prandtl", {{"k", 1.3}}, 2.0).k, 2.0);
}

TEST(Registry, FunctionParams) {
    EXPECT_EQ(registry::function_param(json(2.5), "t")(7.0), 2.5);
    EXPECT_NEAR(registry::function_param(json{{"poly", {1, 2}}}, "t")(3.0), 7.0, 1e-15);
    EXPECT_NEAR(registry::function_param(json{{"exp", 2}}, "t")(0.0), 2.0, 1e-15);
    EXPECT_THROW(registry::function_param(json{{"poly", json::array()}}, "t"), ConfigError);
    EXPECT_THROW(registry::function_param(json("x"), "t"), ConfigError);
}

TEST(Output, NumberFormatting) {
    EXPECT_EQ(out::num(0.1), "0.10000000000000001");
    EXPECT_EQ(out::num(-2.0), "-2");
    EXPECT_EQ(out::num(1e-300), "1e-300");
    EXPECT_EQ(out::num(std::nan("")), "nan");
    for (double v : {pi, -1.0 / 3.0, 6.02214076e23}) EXPECT_EQ(std::stod(out::num(v)), v);
}

TEST(Output, CsvShape) {
    out::Csv c(out::sample_header());
    c.row(std::vector<double>(9, 0.5));
    EXPECT_EQ(c.str().substr(0, c.str().find('\n')), "x,y,sigma,theta,sigma_x,sigma_y,tau_xy,xi,eta");
    EXPECT_EQ(c.data_rows(), 1u);
    EXPECT_THROW(c.row({1.0}), ConfigError);
}

TEST(Output, AtomicWriteReplaces) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "slipline_out_test";
    fs::create_directories(dir);
    const std::string path = (dir / "a.csv").string();
    out::atomic_write(path, "one\n");
    out::atomic_write(path, "two\n");
    std::ifstream is(path);
    std::string s((std::istreambuf_iterator<char>(is)), {});
    EXPECT_EQ(s, "two\n");
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
    EXPECT_EQ(files, 1);
    fs::remove_all(dir);
}

TEST(Output, SvgHasClassesAndViewBox) {
    const std::string s = out::svg({{{{0, 0}, {1, 1}}, "first"}, {{{0, 1}, {1, 0}}, "second"}}, "t");
    EXPECT_NE(s.find("viewBox="), std::string::npos);
    EXPECT_NE(s.find("class=\"first\""), std::string::npos);
    EXPECT_NE(s.find("class=\"second\""), std::string::npos);
    EXPECT_NE(s.find("stroke-dasharray"), std::string::npos);
}

TEST(Verify, SolutionChecksPassAndDetectDefects) {
    verify::Options o;
    o.grid = 20;
    EXPECT_TRUE(verify::check_solution("prandtl", json::object(), 0.0, std::nullopt, o).pass());
    const auto bad = verify::check_solution("prandtl", json::object(), 0.01, std::nullopt, o);
    EXPECT_FALSE(bad.pass());
    EXPECT_FALSE(verify::failures(bad).empty());
    EXPECT_TRUE(verify::check_solution("nadai", json::object(), 0.0, std::nullopt, o).pass());
    EXPECT_FALSE(verify::check_solution("nadai", json::object(), 0.01, std::nullopt, o).pass());
}

TEST(Verify, ReportJsonIsDeterministic) {
    verify::Options o;
    const auto a = verify::to_json(verify::run_criterion(6, o)).dump();
    const auto b = verify::to_json(verify::run_criterion(6, o)).dump();
    EXPECT_EQ(a, b);
    const auto j = json::parse(a);
    ASSERT_FALSE(j.at("checks").empty());
    EXPECT_TRUE(j.at("checks")[0].contains("threshold"));
}
