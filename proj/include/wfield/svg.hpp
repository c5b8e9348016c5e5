#pragma once

#include <optional>
#include <string>

#include "wfield/eig.hpp"
#include "wfield/numrange.hpp"
#include "wfield/productset.hpp"

namespace wfield {

/// Numerical range figure: boundary polyline, eigenvalue markers, axes.
std::string svg_range(const RangeApprox& range, const SpectrumSet& spectrum);

/// Product-set figure: alpha-blended point cloud, sigma(AB) markers colored
/// by verdict, optional highlighted lambda.
std::string svg_product(std::span<const cplx> cloud, const ContainmentReport& report,
                        std::optional<cplx> highlight = std::nullopt);

} // namespace wfield
