#include "ellgen/report.hpp"

#include <fmt/format.h>

namespace ellgen {

nlohmann::json report_to_json(const GenusReport& r)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t k = 0; k <= r.series.order(); ++k)
        coeffs.push_back({{"power", q_power_string(k)}, {"value", to_fraction_string(r.series[k])}});
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"kind", to_string(r.kind)},
            {"method", to_string(r.method)},
            {"weight", r.weight},
            {"group", to_string(r.group)},
            {"manifold", r.manifold},
            {"bundle", r.bundle},
            {"order", r.series.order()},
            {"coefficients", coeffs},
            {"checks", checks}};
}

std::string report_to_text(const GenusReport& r)
{
    std::string out = fmt::format("genus: {}\nmethod: {}\nmanifold: {}\nbundle: {}\nweight: {}\ngroup: {}\norder: {}\n",
                                  to_string(r.kind), to_string(r.method), r.manifold, r.bundle, r.weight,
                                  to_string(r.group), r.series.order());
    out += render_series(r.series);
    for (const auto& c : r.checks)
        out += fmt::format("check {}: {}{}\n", c.name, c.passed ? "yes" : "no", c.detail.empty() ? "" : " (" + c.detail + ")");
    return out;
}

} // namespace ellgen
