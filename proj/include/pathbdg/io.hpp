#pragma once

#include "pathbdg/bdg.hpp"
#include "pathbdg/certificate.hpp"
#include "pathbdg/continuum.hpp"
#include "pathbdg/mc.hpp"
#include "pathbdg/path.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pathbdg
{
	class ParseError : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// Plain-text path: reals separated by newlines, commas or whitespace, no
	/// header. NaN and infinities are rejected.
	Path parse_path_csv(std::string_view text);
	/// A flat JSON array of numbers.
	Path parse_path_json(std::string_view text);
	/// Dispatches on content: a leading '[' means JSON, anything else CSV.
	Path parse_path(std::string_view text);
	Path read_path_file(const std::filesystem::path &file);

	nlohmann::json to_json(const Path &path);
	nlohmann::json to_json(const Certificate &cert);
	/// elapsed_seconds is emitted only when include_timing is set, so that reports
	/// of identical runs are byte-identical by default.
	nlohmann::json to_json(const McReport &report, bool include_timing = false);
	nlohmann::json to_json(const BdgRatioReport &report, bool include_timing = false);
	nlohmann::json to_json(const ScanResult &result);
	nlohmann::json to_json(const SuperhedgeSummary &summary);
	nlohmann::json to_json(const SlackStudy &study);
	nlohmann::json to_json(const GnInstance &inst);

	/// Throws ParseError (or the GnInstance constructor's exceptions) on bad input.
	GnInstance gn_instance_from_json(const nlohmann::json &j);

	inline constexpr std::string_view kCertificateCsvHeader = "inequality_id,lhs,rhs,slack,tolerance,passed";
	std::string to_csv_row(const Certificate &cert);

	inline constexpr std::string_view kMcReportCsvHeader = "quantity,generator,N,samples,estimate,std_error,seed,passed";
	std::string to_csv_row(const McReport &report);

	/// Round-trippable decimal rendering of a double (shortest form).
	std::string format_double(double value);
} // namespace pathbdg
