#include "pathbdg/certificate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pathbdg
{
	namespace
	{
		constexpr std::array<std::pair<InequalityId, std::string_view>, 12> kNames{{
			{InequalityId::DAVIS_QV_BOUND, "DAVIS_QV_BOUND"},
			{InequalityId::DAVIS_MAX_BOUND, "DAVIS_MAX_BOUND"},
			{InequalityId::DAVIS_QV_SHARP, "DAVIS_QV_SHARP"},
			{InequalityId::BDG_QV_BOUND, "BDG_QV_BOUND"},
			{InequalityId::BDG_MAX_BOUND, "BDG_MAX_BOUND"},
			{InequalityId::SHIFTED_QV, "SHIFTED_QV"},
			{InequalityId::SHIFTED_MAX, "SHIFTED_MAX"},
			{InequalityId::GN_LINEAR, "GN_LINEAR"},
			{InequalityId::GN_POWER, "GN_POWER"},
			{InequalityId::CONT_DAVIS, "CONT_DAVIS"},
			{InequalityId::AUX_F_INCREMENT, "AUX_F_INCREMENT"},
			{InequalityId::AUX_G_INCREMENT, "AUX_G_INCREMENT"},
		}};
	} // namespace

	std::string_view to_string(InequalityId id)
	{
		for (const auto &[key, name] : kNames)
		{
			if (key == id)
				return name;
		}
		return "UNKNOWN";
	}

	InequalityId inequality_from_string(std::string_view name)
	{
		for (const auto &[key, label] : kNames)
		{
			if (label == name)
				return key;
		}
		throw std::invalid_argument("unknown inequality id '" + std::string(name) + "'");
	}

	Certificate make_certificate(InequalityId id, double lhs, double rhs, double tolerance)
	{
		const double slack = rhs - lhs;
		const bool passed = slack >= -tolerance * std::max(1.0, std::abs(rhs));
		return {id, lhs, rhs, slack, tolerance, passed};
	}
} // namespace pathbdg
