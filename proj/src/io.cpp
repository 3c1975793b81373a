#include "pathbdg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace pathbdg
{
	namespace
	{
		bool is_separator(char c)
		{
			return c == ',' || c == ';' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
		}

		double parse_real(std::string_view token, std::size_t position)
		{
			// from_chars rejects a leading '+'; accept it for hand-written files.
			if (!token.empty() && token.front() == '+')
				token.remove_prefix(1);
			double value = 0.0;
			const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
			if (ec != std::errc() || end != token.data() + token.size())
				throw ParseError("invalid number '" + std::string(token) + "' at entry " + std::to_string(position));
			if (!std::isfinite(value))
				throw ParseError("non-finite value at entry " + std::to_string(position));
			return value;
		}

		Path checked_path(std::vector<double> values)
		{
			if (values.empty())
				throw ParseError("path file contains no values");
			return Path(std::span<const double>(values));
		}

		nlohmann::json matrix_to_json(const Eigen::MatrixXd &m)
		{
			nlohmann::json rows = nlohmann::json::array();
			for (Index i = 0; i < m.rows(); ++i)
			{
				nlohmann::json row = nlohmann::json::array();
				for (Index j = 0; j < m.cols(); ++j)
					row.push_back(m(i, j));
				rows.push_back(std::move(row));
			}
			return rows;
		}

		nlohmann::json vector_to_json(const Eigen::VectorXd &v)
		{
			return std::vector<double>(v.data(), v.data() + v.size());
		}

		Eigen::VectorXd vector_from_json(const nlohmann::json &j, const char *field)
		{
			if (!j.contains(field) || !j.at(field).is_array())
				throw ParseError(std::string("missing array field '") + field + "'");
			const auto &arr = j.at(field);
			Eigen::VectorXd v(static_cast<Index>(arr.size()));
			for (std::size_t k = 0; k < arr.size(); ++k)
			{
				if (!arr[k].is_number())
					throw ParseError(std::string("non-numeric entry in '") + field + "'");
				v[static_cast<Index>(k)] = arr[k].get<double>();
			}
			return v;
		}
	} // namespace

	std::string format_double(double value)
	{
		char buf[64];
		const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
		return ec == std::errc() ? std::string(buf, end) : std::string("nan");
	}

	Path parse_path_csv(std::string_view text)
	{
		std::vector<double> values;
		std::size_t pos = 0;
		while (pos < text.size())
		{
			while (pos < text.size() && is_separator(text[pos]))
				++pos;
			if (pos >= text.size())
				break;
			std::size_t end = pos;
			while (end < text.size() && !is_separator(text[end]))
				++end;
			values.push_back(parse_real(text.substr(pos, end - pos), values.size()));
			pos = end;
		}
		return checked_path(std::move(values));
	}

	Path parse_path_json(std::string_view text)
	{
		nlohmann::json j;
		try
		{
			j = nlohmann::json::parse(text);
		}
		catch (const nlohmann::json::parse_error &e)
		{
			throw ParseError(std::string("invalid JSON: ") + e.what());
		}
		if (!j.is_array())
			throw ParseError("JSON path must be a flat array of numbers");
		std::vector<double> values;
		values.reserve(j.size());
		for (const auto &item : j)
		{
			if (!item.is_number())
				throw ParseError("JSON path entry " + std::to_string(values.size()) + " is not a number");
			const double v = item.get<double>();
			if (!std::isfinite(v))
				throw ParseError("non-finite value at entry " + std::to_string(values.size()));
			values.push_back(v);
		}
		return checked_path(std::move(values));
	}

	Path parse_path(std::string_view text)
	{
		const auto first = text.find_first_not_of(" \t\r\n");
		if (first != std::string_view::npos && text[first] == '[')
			return parse_path_json(text);
		return parse_path_csv(text);
	}

	Path read_path_file(const std::filesystem::path &file)
	{
		std::ifstream in(file, std::ios::binary);
		if (!in)
			throw ParseError("cannot open '" + file.string() + "'");
		std::ostringstream buffer;
		buffer << in.rdbuf();
		return parse_path(buffer.str());
	}

	nlohmann::json to_json(const Path &path)
	{
		return path.to_vector();
	}

	nlohmann::json to_json(const Certificate &cert)
	{
		return {{"inequality_id", to_string(cert.inequality_id)},
				{"lhs", cert.lhs},
				{"rhs", cert.rhs},
				{"slack", cert.slack},
				{"tolerance", cert.tolerance},
				{"passed", cert.passed}};
	}

	nlohmann::json to_json(const McReport &report, bool include_timing)
	{
		nlohmann::json j{{"quantity", report.quantity},
						 {"generator", report.generator},
						 {"N", report.N},
						 {"samples", report.samples},
						 {"estimate", report.estimate},
						 {"std_error", report.std_error},
						 {"seed", report.seed}};
		if (report.passed)
			j["passed"] = *report.passed;
		if (include_timing)
			j["elapsed_seconds"] = report.elapsed_seconds;
		return j;
	}

	nlohmann::json to_json(const BdgRatioReport &report, bool include_timing)
	{
		return {{"p", report.p},
				{"a_p", report.a_p},
				{"b_p", report.b_p},
				{"qv_moment", to_json(report.qv_moment, include_timing)},
				{"max_moment", to_json(report.max_moment, include_timing)},
				{"lower_gap", to_json(report.lower_gap, include_timing)},
				{"upper_gap", to_json(report.upper_gap, include_timing)},
				{"qv_over_max", report.qv_over_max},
				{"max_over_qv", report.max_over_qv},
				{"passed", report.passed}};
	}

	nlohmann::json to_json(const ScanResult &result)
	{
		nlohmann::json j{{"inequality_id", to_string(result.inequality_id)},
						 {"best_ratio", result.best_ratio},
						 {"argmax_path", to_json(result.argmax_path)},
						 {"iterations", result.iterations},
						 {"restarts", result.restarts},
						 {"seed", result.seed}};
		if (result.p > 0.0)
			j["p"] = result.p;
		return j;
	}

	nlohmann::json to_json(const SuperhedgeSummary &summary)
	{
		return {{"strategy", summary.strategy},
				{"mean", to_json(summary.mean)},
				{"min", summary.min},
				{"max", summary.max},
				{"median", summary.median},
				{"q99", summary.q99},
				{"defined", summary.defined},
				{"undefined", summary.undefined}};
	}

	nlohmann::json to_json(const SlackStudy &study)
	{
		nlohmann::json levels = nlohmann::json::array();
		for (const auto &level : study.levels)
		{
			levels.push_back({{"steps", level.steps},
							  {"q01", level.q01},
							  {"q01_std_error", level.q01_std_error},
							  {"mean_negative_part", level.mean_negative_part},
							  {"mean_negative_part_std_error", level.mean_negative_part_std_error},
							  {"fraction_near_nonnegative", level.fraction_near_nonnegative}});
		}
		return {{"count", study.count}, {"horizon", study.horizon}, {"seed", study.seed}, {"levels", levels}};
	}

	nlohmann::json to_json(const GnInstance &inst)
	{
		return {{"p", inst.p()},
				{"a", vector_to_json(inst.a())},
				{"c", vector_to_json(inst.c())},
				{"h", matrix_to_json(inst.integrands())},
				{"x", to_json(inst.x())},
				{"tolerance", inst.tolerance()}};
	}

	GnInstance gn_instance_from_json(const nlohmann::json &j)
	{
		if (!j.is_object() || !j.contains("p") || !j.at("p").is_number())
			throw ParseError("Garsia-Neveu instance needs a numeric 'p'");
		const Eigen::VectorXd a = vector_from_json(j, "a");
		const Eigen::VectorXd c = vector_from_json(j, "c");
		const Eigen::VectorXd x = vector_from_json(j, "x");
		if (!j.contains("h") || !j.at("h").is_array())
			throw ParseError("missing array field 'h'");
		const auto &rows = j.at("h");
		const Index n = static_cast<Index>(rows.size());
		Eigen::MatrixXd h(n, n);
		for (Index i = 0; i < n; ++i)
		{
			const auto &row = rows[static_cast<std::size_t>(i)];
			if (!row.is_array() || static_cast<Index>(row.size()) != n)
				throw ParseError("'h' must be a square array of arrays");
			for (Index jj = 0; jj < n; ++jj)
			{
				if (!row[static_cast<std::size_t>(jj)].is_number())
					throw ParseError("non-numeric entry in 'h'");
				h(i, jj) = row[static_cast<std::size_t>(jj)].get<double>();
			}
		}
		const double tol = j.value("tolerance", kDefaultTolerance);
		return GnInstance(j.at("p").get<double>(), a, c, h, Path(x), tol);
	}

	std::string to_csv_row(const Certificate &cert)
	{
		std::ostringstream os;
		os << to_string(cert.inequality_id) << ',' << format_double(cert.lhs) << ',' << format_double(cert.rhs) << ','
		   << format_double(cert.slack) << ',' << format_double(cert.tolerance) << ','
		   << (cert.passed ? "true" : "false");
		return os.str();
	}

	std::string to_csv_row(const McReport &report)
	{
		std::ostringstream os;
		os << report.quantity << ",\"" << report.generator << "\"," << report.N << ',' << report.samples << ','
		   << format_double(report.estimate) << ',' << format_double(report.std_error) << ',' << report.seed << ','
		   << (report.passed ? (*report.passed ? "true" : "false") : "");
		return os.str();
	}
} // namespace pathbdg
