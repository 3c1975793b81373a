#include "fixtures.hpp"

#include "pathbdg/cli.hpp"
#include "pathbdg/io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pathbdg;
namespace fs = std::filesystem;

namespace
{
	struct CliResult
	{
		int code;
		std::string out;
		std::string err;
	};

	CliResult run_args(std::vector<std::string> args)
	{
		args.insert(args.begin(), "pathbdg");
		std::vector<const char *> argv;
		for (const auto &a : args)
			argv.push_back(a.c_str());
		std::ostringstream out, err;
		const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
		return {code, out.str(), err.str()};
	}

	class TempDir
	{
	public:
		TempDir() : dir_(fs::temp_directory_path() / ("pathbdg_test_" + std::to_string(::getpid())))
		{
			fs::create_directories(dir_);
		}
		~TempDir() { fs::remove_all(dir_); }
		fs::path write(const std::string &name, const std::string &content) const
		{
			std::ofstream(dir_ / name) << content;
			return dir_ / name;
		}
		const fs::path &path() const { return dir_; }

	private:
		fs::path dir_;
	};
} // namespace

TEST(ParseTest, CsvVariants)
{
	EXPECT_EQ(parse_path_csv("1\n-1\n"), (Path{1.0, -1.0}));
	EXPECT_EQ(parse_path_csv("1,-1"), (Path{1.0, -1.0}));
	EXPECT_EQ(parse_path_csv("  +2.5 ;\r\n-3e-1\t4 "), (Path{2.5, -0.3, 4.0}));
	EXPECT_THROW(parse_path_csv(""), ParseError);
	EXPECT_THROW(parse_path_csv("1\nnan\n"), ParseError);
	EXPECT_THROW(parse_path_csv("1\ninf\n"), ParseError);
	EXPECT_THROW(parse_path_csv("1\nabc\n"), ParseError);
	EXPECT_THROW(parse_path_csv("1e400"), ParseError);
}

TEST(ParseTest, JsonVariants)
{
	EXPECT_EQ(parse_path_json("[0, 1.5, -2]"), (Path{0.0, 1.5, -2.0}));
	EXPECT_EQ(parse_path(" [1]"), Path{1.0});
	EXPECT_EQ(parse_path("1\n2"), (Path{1.0, 2.0}));
	EXPECT_THROW(parse_path_json("[]"), ParseError);
	EXPECT_THROW(parse_path_json("{\"a\": 1}"), ParseError);
	EXPECT_THROW(parse_path_json("[1, \"x\"]"), ParseError);
	EXPECT_THROW(parse_path_json("[1, null]"), ParseError);
	EXPECT_THROW(parse_path_json("[1,"), ParseError);
	EXPECT_THROW(read_path_file("/nonexistent/path.csv"), ParseError);
}

TEST(ParseTest, RoundTripIsExact)
{
	for (std::uint64_t k = 0; k < 50; ++k)
	{
		const Path x = fixtures::random_path(4, k);
		EXPECT_EQ(parse_path_json(to_json(x).dump()), x);
		std::string csv;
		for (double v : x.to_vector())
			csv += format_double(v) + "\n";
		EXPECT_EQ(parse_path_csv(csv), x);
	}
}

TEST(SerializeTest, CertificateJsonAndCsv)
{
	const Certificate c = make_certificate(InequalityId::DAVIS_QV_SHARP, 1.0, 2.0);
	const auto j = to_json(c);
	EXPECT_EQ(j.at("inequality_id"), "DAVIS_QV_SHARP");
	EXPECT_EQ(j.at("slack"), 1.0);
	EXPECT_EQ(j.at("passed"), true);
	EXPECT_EQ(to_csv_row(c), "DAVIS_QV_SHARP,1,2,1,1e-09,true");
}

TEST(SerializeTest, CertificateTolerancePolicy)
{
	EXPECT_TRUE(make_certificate(InequalityId::DAVIS_QV_BOUND, 1.0 + 0.5e-9, 1.0).passed);
	EXPECT_FALSE(make_certificate(InequalityId::DAVIS_QV_BOUND, 1.0 + 2e-9, 1.0).passed);
	EXPECT_TRUE(make_certificate(InequalityId::DAVIS_QV_BOUND, 1e6 + 1e-4, 1e6).passed);
	EXPECT_FALSE(make_certificate(InequalityId::DAVIS_QV_BOUND, 1e6 + 1e-2, 1e6).passed);
	for (auto id : {InequalityId::GN_POWER, InequalityId::CONT_DAVIS, InequalityId::AUX_G_INCREMENT})
		EXPECT_EQ(inequality_from_string(to_string(id)), id);
	EXPECT_THROW(inequality_from_string("NOPE"), std::invalid_argument);
}

TEST(SerializeTest, McReportOmitsTimingByDefault)
{
	McReport r{"q", "srw", 8, 10, 0.5, 0.1, 3, 1.25, true};
	EXPECT_FALSE(to_json(r).contains("elapsed_seconds"));
	EXPECT_EQ(to_json(r, true).at("elapsed_seconds"), 1.25);
	EXPECT_EQ(to_csv_row(r), "q,\"srw\",8,10,0.5,0.1,3,true");
}

TEST(SerializeTest, GnInstanceRoundTrip)
{
	const GnInstance inst = fixtures::random_gn_instance(2, 11);
	const GnInstance back = gn_instance_from_json(to_json(inst));
	EXPECT_EQ(back.p(), inst.p());
	EXPECT_EQ(back.a(), inst.a());
	EXPECT_EQ(back.c(), inst.c());
	EXPECT_EQ(back.integrands(), inst.integrands());
	EXPECT_EQ(back.x(), inst.x());
	EXPECT_THROW(gn_instance_from_json(nlohmann::json::object()), ParseError);
}

TEST(CliTest, CertifyTwoPointPath)
{
	TempDir tmp;
	const auto file = tmp.write("p.csv", "1,-1\n");
	const CliResult r = run_args({"certify", "--input", file.string(), "--p", "2", "--p", "3"});
	ASSERT_EQ(r.code, exit_code::kOk) << r.err;
	const auto j = nlohmann::json::parse(r.out);
	EXPECT_EQ(j.at("command"), "certify");
	EXPECT_EQ(j.at("version"), std::string(kVersion));
	EXPECT_EQ(j.at("path_length"), 2);
	EXPECT_EQ(j.at("certificates").size(), 3u);
	EXPECT_EQ(j.at("bdg").size(), 2u);
	EXPECT_EQ(j.at("bdg")[0].at("c_p"), 36.0);
	EXPECT_EQ(j.at("passed"), true);
}

TEST(CliTest, CertifyCsvFormat)
{
	TempDir tmp;
	const auto file = tmp.write("p.json", "[0, 1, 0]");
	const CliResult r = run_args({"certify", "--input", file.string(), "--format", "csv"});
	ASSERT_EQ(r.code, exit_code::kOk);
	EXPECT_EQ(r.out.substr(0, kCertificateCsvHeader.size()), kCertificateCsvHeader);
	EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliTest, ConfigurationErrors)
{
	TempDir tmp;
	const auto file = tmp.write("p.csv", "1\n2\n");
	EXPECT_EQ(run_args({"certify"}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"certify", "--input", (tmp.path() / "missing.csv").string()}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"certify", "--input", file.string(), "--p", "9"}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"certify", "--input", file.string(), "--p", "9", "--allow-large-p"}).code, exit_code::kOk);
	EXPECT_EQ(run_args({"certify", "--input", file.string(), "--p", "1"}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"certify", "--input", file.string(), "--format", "xml"}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"frobnicate"}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({}).code, exit_code::kConfigError);
	EXPECT_EQ(run_args({"scan", "--seed", "1", "--inequality", "GN_LINEAR", "--iters", "5"}).code,
			  exit_code::kConfigError);
	const auto bad = tmp.write("bad.csv", "1\nnan\n");
	EXPECT_EQ(run_args({"certify", "--input", bad.string()}).code, exit_code::kConfigError);
}

TEST(CliTest, VersionFlag)
{
	const CliResult r = run_args({"--version"});
	EXPECT_EQ(r.code, 0);
	EXPECT_NE(r.out.find(kVersion), std::string::npos);
}

TEST(CliTest, McIsByteIdenticalAcrossThreadCounts)
{
	const std::vector<std::string> base{"mc", "--seed", "17", "--length", "32", "--samples", "500", "--p", "2"};
	auto one = base;
	one.insert(one.end(), {"--threads", "1"});
	auto four = base;
	four.insert(four.end(), {"--threads", "4"});
	const CliResult a = run_args(one);
	const CliResult b = run_args(four);
	ASSERT_EQ(a.code, exit_code::kOk) << a.err;
	EXPECT_EQ(a.out, b.out);
	const auto j = nlohmann::json::parse(a.out);
	EXPECT_EQ(j.at("seed"), 17u);
	EXPECT_EQ(j.at("generator"), "philox4x32-10");
	EXPECT_EQ(j.at("moments").size(), 2u);
}

TEST(CliTest, MissingSeedIsGeneratedAndPrinted)
{
	const CliResult r = run_args({"mc", "--length", "4", "--samples", "50"});
	EXPECT_NE(r.err.find("seed: "), std::string::npos);
	const auto j = nlohmann::json::parse(r.out);
	EXPECT_EQ(std::to_string(j.at("seed").get<std::uint64_t>()), r.err.substr(6, r.err.find('\n') - 6));
}

TEST(CliTest, GridAndScanAndContinuum)
{
	const CliResult grid = run_args({"grid", "--samples", "2000", "--seed", "3"});
	ASSERT_EQ(grid.code, exit_code::kOk) << grid.err;
	EXPECT_EQ(nlohmann::json::parse(grid.out).at("grid").at("points"), 21 * 9 * 43);

	const CliResult scan =
		run_args({"scan", "--seed", "3", "--iters", "100", "--restarts", "2", "--inequality", "BDG_MAX_BOUND", "--p", "3"});
	ASSERT_EQ(scan.code, exit_code::kOk) << scan.err;
	const auto sj = nlohmann::json::parse(scan.out).at("scan");
	EXPECT_LE(sj.at("best_ratio").get<double>(), 1.0);
	EXPECT_EQ(sj.at("p"), 3.0);

	const CliResult cont = run_args({"continuum", "--seed", "3", "--samples", "40", "--steps", "64"});
	ASSERT_EQ(cont.code, exit_code::kOk) << cont.err;
	const auto cj = nlohmann::json::parse(cont.out);
	EXPECT_EQ(cj.at("slack_study").at("levels").size(), 3u);
	EXPECT_EQ(cj.at("superhedge").size(), 2u);
}

TEST(CliTest, OutputDirectoryOverride)
{
	TempDir tmp;
	const auto file = tmp.write("p.csv", "0\n1\n");
	::setenv(kOutputDirEnv, tmp.path().c_str(), 1);
	const CliResult r = run_args({"certify", "--input", file.string(), "--output", "report.json"});
	::unsetenv(kOutputDirEnv);
	ASSERT_EQ(r.code, exit_code::kOk);
	EXPECT_TRUE(r.out.empty());
	std::ifstream in(tmp.path() / "report.json");
	EXPECT_EQ(nlohmann::json::parse(in).at("passed"), true);
}
