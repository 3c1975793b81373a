#include "pathbdg/cli.hpp"

#include "pathbdg/bdg.hpp"
#include "pathbdg/continuum.hpp"
#include "pathbdg/davis.hpp"
#include "pathbdg/io.hpp"
#include "pathbdg/mc.hpp"
#include "pathbdg/rng.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace pathbdg
{
	namespace
	{
		using nlohmann::json;

		class ConfigError : public std::runtime_error
		{
		public:
			using std::runtime_error::runtime_error;
		};

		std::string_view command_name(Command c)
		{
			switch (c)
			{
			case Command::Certify:
				return "certify";
			case Command::Mc:
				return "mc";
			case Command::Grid:
				return "grid";
			case Command::Scan:
				return "scan";
			case Command::Continuum:
				return "continuum";
			}
			return "unknown";
		}

		json envelope(const RunConfig &cfg)
		{
			return {{"command", command_name(cfg.command)}, {"version", kVersion}};
		}

		std::uint64_t resolve_seed(const RunConfig &cfg, std::ostream &err)
		{
			if (cfg.seed)
				return *cfg.seed;
			std::random_device device;
			const std::uint64_t seed = (std::uint64_t{device()} << 32) | device();
			err << "seed: " << seed << '\n';
			return seed;
		}

		void check_exponents(const RunConfig &cfg)
		{
			for (double p : cfg.ps)
				BdgConfig{.p = p, .tolerance = cfg.tolerance, .allow_large_p = cfg.allow_large_p}.validate();
		}

		struct Emitted
		{
			json document;
			std::string csv;
			int status = exit_code::kOk;
		};

		std::string csv_block(std::string_view header, const std::vector<std::string> &rows)
		{
			std::string out(header);
			out += '\n';
			for (const auto &row : rows)
				out += row + '\n';
			return out;
		}

		Emitted run_certify(const RunConfig &cfg)
		{
			if (cfg.input.empty())
				throw ConfigError("certify needs --input");
			check_exponents(cfg);
			const Path path = read_path_file(cfg.input);

			std::vector<Certificate> all;
			const auto [qv, max] = certify_davis(path, cfg.tolerance);
			const Certificate sharp = certify_davis_sharp(path, cfg.tolerance);
			all.insert(all.end(), {qv, max, sharp});

			Emitted e;
			e.document = envelope(cfg);
			e.document["path_length"] = path.size();
			e.document["certificates"] = json::array({to_json(qv), to_json(max), to_json(sharp)});
			json bdg = json::array();
			for (double p : cfg.ps)
			{
				const auto [first, second] = certify_bdg(
					path, BdgConfig{.p = p, .tolerance = cfg.tolerance, .allow_large_p = cfg.allow_large_p});
				bdg.push_back({{"p", p},
							   {"c_p", bdg_constant(p, cfg.allow_large_p)},
							   {"certificates", json::array({to_json(first), to_json(second)})}});
				all.insert(all.end(), {first, second});
			}
			e.document["bdg"] = bdg;

			bool ok = true;
			std::vector<std::string> rows;
			for (const auto &c : all)
			{
				ok = ok && c.passed;
				rows.push_back(to_csv_row(c));
			}
			e.document["passed"] = ok;
			e.csv = csv_block(kCertificateCsvHeader, rows);
			e.status = ok ? exit_code::kOk : exit_code::kFailed;
			return e;
		}

		Emitted run_mc(const RunConfig &cfg, std::ostream &err)
		{
			check_exponents(cfg);
			Generator gen;
			gen.kind = generator_kind_from_string(cfg.generator);
			gen.sigma = cfg.sigma;
			gen.horizon = cfg.horizon;
			gen.validate();

			const Index N = cfg.length.value_or(128);
			const std::size_t samples = cfg.samples.value_or(100000);
			if (N < 0 || samples < 1)
				throw ConfigError("mc needs --length >= 0 and --samples >= 1");
			const std::uint64_t seed = resolve_seed(cfg, err);
			const McOptions opts{.threads = cfg.threads};

			const McReport zero = verify_zero_integral(gen, N, samples, seed, opts);
			std::vector<double> ps{1.0};
			ps.insert(ps.end(), cfg.ps.begin(), cfg.ps.end());

			Emitted e;
			e.document = envelope(cfg);
			e.document["seed"] = seed;
			e.document["generator"] = RandomStream::kGeneratorName;
			e.document["zero_integral"] = to_json(zero, cfg.timing);
			std::vector<std::string> rows{to_csv_row(zero)};
			bool ok = *zero.passed;
			json ratios = json::array();
			for (double p : ps)
			{
				const BdgRatioReport r = empirical_bdg_ratio(gen, N, samples, p, seed, opts);
				ratios.push_back(to_json(r, cfg.timing));
				for (const McReport *m : {&r.qv_moment, &r.max_moment, &r.lower_gap, &r.upper_gap})
				{
					McReport tagged = *m;
					tagged.quantity += "(p=" + format_double(p) + ")";
					rows.push_back(to_csv_row(tagged));
				}
				ok = ok && r.passed;
			}
			e.document["moments"] = ratios;
			e.document["passed"] = ok;
			e.csv = csv_block(kMcReportCsvHeader, rows);
			e.status = ok ? exit_code::kOk : exit_code::kFailed;
			return e;
		}

		json sweep_json(const AuxSweepResult &r)
		{
			const auto point = [](const std::optional<AuxPoint> &p) -> json {
				if (!p)
					return nullptr;
				return {{"x", p->x}, {"m", p->m}, {"q", p->q}, {"d", p->d}};
			};
			return {{"points", r.points},
					{"f_failures", r.f_failures},
					{"g_failures", r.g_failures},
					{"worst_f_slack", r.worst_f_slack},
					{"worst_g_slack", r.worst_g_slack},
					{"worst_f_point", point(r.worst_f_point)},
					{"worst_g_point", point(r.worst_g_point)}};
		}

		std::string sweep_row(std::string_view name, const AuxSweepResult &r)
		{
			std::ostringstream os;
			os << name << ',' << r.points << ',' << r.f_failures << ',' << r.g_failures << ','
			   << format_double(r.worst_f_slack) << ',' << format_double(r.worst_g_slack);
			return os.str();
		}

		Emitted run_grid(const RunConfig &cfg, std::ostream &err)
		{
			const AuxSweepResult grid = sweep_aux_increments(aux_grid(), cfg.tolerance);
			Emitted e;
			e.document = envelope(cfg);
			e.document["grid"] = sweep_json(grid);
			std::vector<std::string> rows{sweep_row("grid", grid)};
			bool ok = grid.passed();

			const std::size_t random_count = cfg.samples.value_or(0);
			if (random_count > 0)
			{
				const std::uint64_t seed = resolve_seed(cfg, err);
				const AuxSweepResult random = sweep_aux_random(random_count, seed, cfg.tolerance, cfg.threads);
				e.document["random"] = sweep_json(random);
				e.document["seed"] = seed;
				rows.push_back(sweep_row("random", random));
				ok = ok && random.passed();
			}
			e.document["passed"] = ok;
			e.csv = csv_block("set,points,f_failures,g_failures,worst_f_slack,worst_g_slack", rows);
			e.status = ok ? exit_code::kOk : exit_code::kFailed;
			return e;
		}

		Emitted run_scan(const RunConfig &cfg, std::ostream &err)
		{
			check_exponents(cfg);
			const InequalityId id = inequality_from_string(cfg.inequality);
			ScanOptions opts;
			opts.p = cfg.ps.empty() ? 2.0 : cfg.ps.front();
			opts.tolerance = cfg.tolerance;
			opts.max_length = cfg.length.value_or(64);
			opts.threads = cfg.threads;
			if (!cfg.input.empty())
				opts.start = read_path_file(cfg.input);
			if (opts.max_length < 1)
				throw ConfigError("scan needs --length >= 1");
			const std::uint64_t seed = resolve_seed(cfg, err);

			const ScanResult result = scan_tightness(id, cfg.iterations, seed, cfg.restarts, opts);
			Emitted e;
			e.document = envelope(cfg);
			e.document["scan"] = to_json(result);
			std::ostringstream row;
			row << to_string(result.inequality_id) << ',' << format_double(result.best_ratio) << ','
				<< result.iterations << ',' << result.restarts << ',' << result.seed;
			e.csv = csv_block("inequality_id,best_ratio,iterations,restarts,seed", {row.str()});
			return e;
		}

		Emitted run_continuum(const RunConfig &cfg, std::ostream &err)
		{
			const std::size_t samples = cfg.samples.value_or(1000);
			const Index steps = cfg.steps.value_or(4096);
			if (samples < 1 || steps < 1)
				throw ConfigError("continuum needs --samples >= 1 and --steps >= 1");
			if (!std::isfinite(cfg.horizon) || cfg.horizon <= 0.0)
				throw ConfigError("continuum needs a positive --horizon");
			const std::uint64_t seed = resolve_seed(cfg, err);

			std::vector<Index> levels;
			for (Index factor : {Index{16}, Index{4}})
			{
				if (steps % factor == 0)
					levels.push_back(steps / factor);
			}
			levels.push_back(steps);

			const SlackStudy study = continuum_slack_study(samples, levels, cfg.horizon, seed, cfg.threads);
			const auto [capped, smooth] = superhedge_report(samples, steps, cfg.horizon, seed, cfg.threads);

			Emitted e;
			e.document = envelope(cfg);
			e.document["seed"] = seed;
			e.document["slack_study"] = to_json(study);
			e.document["superhedge"] = json::array({to_json(capped), to_json(smooth)});
			std::vector<std::string> rows;
			for (const auto &level : study.levels)
			{
				std::ostringstream os;
				os << level.steps << ',' << format_double(level.q01) << ',' << format_double(level.q01_std_error) << ','
				   << format_double(level.mean_negative_part) << ','
				   << format_double(level.mean_negative_part_std_error) << ','
				   << format_double(level.fraction_near_nonnegative);
				rows.push_back(os.str());
			}
			e.csv = csv_block("steps,q01,q01_std_error,mean_negative_part,mean_negative_part_std_error,"
							  "fraction_near_nonnegative",
							  rows);
			return e;
		}

		std::filesystem::path output_path(const std::string &output)
		{
			std::filesystem::path target(output);
			if (target.is_relative())
			{
				if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir)
					target = std::filesystem::path(dir) / target;
			}
			return target;
		}
	} // namespace

	int run(const RunConfig &cfg, std::ostream &out, std::ostream &err)
	{
		try
		{
			if (!(cfg.tolerance > 0.0))
				throw ConfigError("--tolerance must be positive");

			Emitted e;
			switch (cfg.command)
			{
			case Command::Certify:
				e = run_certify(cfg);
				break;
			case Command::Mc:
				e = run_mc(cfg, err);
				break;
			case Command::Grid:
				e = run_grid(cfg, err);
				break;
			case Command::Scan:
				e = run_scan(cfg, err);
				break;
			case Command::Continuum:
				e = run_continuum(cfg, err);
				break;
			}

			const std::string text = cfg.format == OutputFormat::Json ? e.document.dump(2) + "\n" : e.csv;
			if (cfg.output.empty())
			{
				out << text;
			}
			else
			{
				std::ofstream file(output_path(cfg.output), std::ios::binary);
				if (!file)
					throw ConfigError("cannot write '" + output_path(cfg.output).string() + "'");
				file << text;
			}
			return e.status;
		}
		catch (const CounterexampleFound &ex)
		{
			err << "error: " << ex.what() << "\npath: " << to_json(ex.path()).dump() << '\n';
			return exit_code::kCounterexample;
		}
		catch (const std::exception &ex)
		{
			err << "error: " << ex.what() << '\n';
			return exit_code::kConfigError;
		}
	}

	int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
	{
		CLI::App app{"Pathwise Davis and Burkholder-Davis-Gundy certificates and Monte Carlo checks", "pathbdg"};
		app.set_version_flag("--version", std::string(kVersion));
		app.require_subcommand(1);

		RunConfig cfg;
		std::string format = "json";
		app.add_option("--input", cfg.input, "Path file (CSV or JSON array)");
		app.add_option("--p", cfg.ps, "BDG exponent(s) in (1, 8]");
		app.add_option("--samples", cfg.samples, "Monte Carlo sample count");
		app.add_option("--length", cfg.length, "Path length N (mc) or maximal length (scan)");
		app.add_option("--steps", cfg.steps, "Grid steps for the continuum study");
		app.add_option("--seed", cfg.seed, "64-bit seed; generated and printed when omitted");
		app.add_option("--tolerance", cfg.tolerance, "Relative certificate tolerance")->check(CLI::PositiveNumber);
		app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
		app.add_option("--output", cfg.output, "Output file (default stdout)");
		app.add_option("--threads", cfg.threads, "Worker thread cap (0 = all cores); results do not depend on it");
		app.add_option("--generator", cfg.generator, "srw | gaussian | rademacher | bm")
			->check(CLI::IsMember({"srw", "gaussian", "rademacher", "bm"}));
		app.add_option("--sigma", cfg.sigma, "Generator step scale");
		app.add_option("--horizon", cfg.horizon, "Time horizon for Brownian generators");
		app.add_option("--inequality", cfg.inequality, "Inequality to scan");
		app.add_option("--iters", cfg.iterations, "Hill-climbing iterations per restart");
		app.add_option("--restarts", cfg.restarts, "Hill-climbing restarts");
		app.add_flag("--allow-large-p", cfg.allow_large_p, "Admit p > 8");
		app.add_flag("--timing", cfg.timing, "Include elapsed times in reports");

		const std::pair<const char *, Command> commands[] = {
			{"certify", Command::Certify}, {"mc", Command::Mc},		   {"grid", Command::Grid},
			{"scan", Command::Scan},	   {"continuum", Command::Continuum},
		};
		const char *help[] = {
			"Certify every applicable inequality on --input",
			"Monte Carlo check of the zero-mean integral and moment bounds",
			"Sweep the auxiliary-function increment bounds",
			"Hill-climb for near-equality paths",
			"Discretized Brownian study of the continuous-time bound",
		};
		for (std::size_t k = 0; k < std::size(commands); ++k)
		{
			const Command c = commands[k].second;
			app.add_subcommand(commands[k].first, help[k])->fallthrough()->callback([&cfg, c] { cfg.command = c; });
		}

		try
		{
			app.parse(argc, argv);
		}
		catch (const CLI::ParseError &e)
		{
			if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
				return app.exit(e, out, err);
			app.exit(e, out, err);
			return exit_code::kConfigError;
		}
		cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
		return run(cfg, out, err);
	}
} // namespace pathbdg
