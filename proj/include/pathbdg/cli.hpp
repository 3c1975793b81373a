#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathbdg
{
	inline constexpr std::string_view kVersion = "0.1.0";

	namespace exit_code
	{
		inline constexpr int kOk = 0;
		inline constexpr int kFailed = 1;
		inline constexpr int kConfigError = 2;
		inline constexpr int kCounterexample = 3;
	} // namespace exit_code

	enum class Command
	{
		Certify,
		Mc,
		Grid,
		Scan,
		Continuum,
	};

	enum class OutputFormat
	{
		Json,
		Csv,
	};

	struct RunConfig
	{
		Command command = Command::Certify;
		std::string input;
		std::vector<double> ps;
		std::optional<std::size_t> samples;
		std::optional<long long> length;
		std::optional<long long> steps;
		std::optional<std::uint64_t> seed;
		double tolerance = 1e-9;
		OutputFormat format = OutputFormat::Json;
		std::string output;
		unsigned threads = 0;

		std::string generator = "srw";
		double sigma = 1.0;
		double horizon = 1.0;
		std::string inequality = "DAVIS_QV_SHARP";
		std::size_t iterations = 10000;
		std::size_t restarts = 4;
		bool allow_large_p = false;
		bool timing = false;
	};

	/// Directory prepended to relative --output paths when set.
	inline constexpr const char *kOutputDirEnv = "PATHBDG_OUTPUT_DIR";

	/// Executes one command. Reports go to cfg.output (or `out`), diagnostics to `err`.
	/// Exit codes: 0 success, 1 failed certification or statistical check,
	/// 2 parse/config error, 3 counterexample found (an internal bug signal).
	int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);

	/// Parses argv (subcommand style) and calls run(). Flag errors exit with 2.
	int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
} // namespace pathbdg
