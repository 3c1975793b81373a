#pragma once

#include <string_view>

namespace pathbdg
{
	enum class InequalityId
	{
		DAVIS_QV_BOUND,
		DAVIS_MAX_BOUND,
		DAVIS_QV_SHARP,
		BDG_QV_BOUND,
		BDG_MAX_BOUND,
		SHIFTED_QV,
		SHIFTED_MAX,
		GN_LINEAR,
		GN_POWER,
		CONT_DAVIS,
		AUX_F_INCREMENT,
		AUX_G_INCREMENT,
	};

	std::string_view to_string(InequalityId id);
	/// Throws std::invalid_argument for unknown names.
	InequalityId inequality_from_string(std::string_view name);

	inline constexpr double kDefaultTolerance = 1e-9;

	/// One instance of an inequality lhs <= rhs.
	///
	/// passed holds iff slack >= -tolerance * max(1, |rhs|); the scale-aware
	/// threshold keeps the check meaningful for homogeneous inequalities.
	struct Certificate
	{
		InequalityId inequality_id;
		double lhs;
		double rhs;
		double slack;
		double tolerance;
		bool passed;
	};

	Certificate make_certificate(InequalityId id, double lhs, double rhs, double tolerance = kDefaultTolerance);
} // namespace pathbdg
