#pragma once

// Growth scans over a size grid with fixed CSV output, and log-log exponent
// fitting for the scanned columns.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "convexsum/check.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/errors.hpp"
#include "convexsum/generators.hpp"
#include "convexsum/parallel.hpp"

namespace convexsum {

inline constexpr std::size_t kScanSizeCap = 4096;

struct ScanRow {
    std::string family;
    std::size_t n = 0;
    Integer sumset_size;
    Integer diffset_size;
    std::optional<Integer> prodset_size; // positive-element sets only
    Integer e2;
    Integer e3;
    ValueWithBound e15;
    std::optional<double> margin_thm11;       // |A+A| / (n^{14/9}/(log2 n)^{2/9})
    std::optional<double> margin_thm12_plus;  // same quantity, reported when |AA| exists
    std::optional<double> margin_thm12_minus; // |A-A| / (n^{8/5}/(log2 n)^{2/5})
};

inline ScanRow scan_row(const FamilySpec& spec, const FiniteSet& a) {
    ScanRow row;
    row.family = spec.label();
    row.n = a.size();
    row.sumset_size = Integer(static_cast<unsigned long>(sumset(a, a).size()));
    row.diffset_size = Integer(static_cast<unsigned long>(diffset(a, a).size()));
    if (a.all_positive())
        row.prodset_size = Integer(static_cast<unsigned long>(productset(a, a).size()));
    row.e2 = energy_cross(a, a);
    row.e3 = energy_k(a, 3);
    row.e15 = energy_fractional(a);
    if (a.size() >= 2) {
        double n = static_cast<double>(a.size());
        double logn = std::log2(n);
        double bare_plus = std::pow(n, 14.0 / 9.0) / std::pow(logn, 2.0 / 9.0);
        double bare_minus = std::pow(n, 8.0 / 5.0) / std::pow(logn, 2.0 / 5.0);
        row.margin_thm11 = row.sumset_size.get_d() / bare_plus;
        if (row.prodset_size) {
            row.margin_thm12_plus = row.margin_thm11;
            row.margin_thm12_minus = row.diffset_size.get_d() / bare_minus;
        }
    }
    return row;
}

inline std::vector<ScanRow> scan_growth(const FamilySpec& base, const std::vector<std::size_t>& grid,
                                        std::uint64_t seed, unsigned workers = 1,
                                        std::size_t n_cap = kScanSizeCap) {
    for (auto n : grid)
        if (n > n_cap)
            throw GridTooLarge("scan_growth: n = " + std::to_string(n) + " exceeds cap " +
                               std::to_string(n_cap));
    std::vector<ScanRow> rows(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        FamilySpec spec = base;
        spec.n = grid[i];
        spec.seed = seed ^ static_cast<std::uint64_t>(grid[i]);
        if (spec.family == Family::ggp && spec.dims.empty()) {
            // square-ish default box when only n is given
            std::size_t k1 = 1;
            while ((k1 + 1) * (k1 + 1) <= spec.n) ++k1;
            if (spec.n % k1 != 0) throw InvalidParameter("ggp scan needs dims or a composite n");
            spec.ratios = {Rational(2), Rational(3)};
            spec.dims = {k1, spec.n / k1};
        }
        if (spec.family == Family::f_of_z && spec.inner) spec.inner->n = spec.n;
        rows[i] = scan_row(spec, generate(spec));
    });
    return rows;
}

inline const std::vector<std::string>& scan_columns() {
    static const std::vector<std::string> cols{
        "family", "n",  "sumset", "diffset",      "prodset",
        "E2",     "E3", "E15",    "margin_thm11", "margin_thm12_plus",
        "margin_thm12_minus"};
    return cols;
}

// CSV with the versioned header row. Big integers as decimal strings,
// doubles in shortest round-trip form, absent optionals empty.
inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream out;
    out << "schema=1\n";
    const auto& cols = scan_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : rows) {
        out << r.family << "," << r.n << "," << r.sumset_size.get_str() << ","
            << r.diffset_size.get_str() << ","
            << (r.prodset_size ? r.prodset_size->get_str() : "") << "," << r.e2.get_str() << ","
            << r.e3.get_str() << "," << format_double(r.e15.value) << ","
            << (r.margin_thm11 ? format_double(*r.margin_thm11) : "") << ","
            << (r.margin_thm12_plus ? format_double(*r.margin_thm12_plus) : "") << ","
            << (r.margin_thm12_minus ? format_double(*r.margin_thm12_minus) : "") << "\n";
    }
    return out.str();
}

inline std::vector<ScanRow> scan_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "schema=1")
        throw ParseError("scan CSV: missing schema=1 header");
    if (!std::getline(in, line)) throw ParseError("scan CSV: missing column header");
    std::vector<ScanRow> rows;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        cells.resize(scan_columns().size());
        try {
            ScanRow r;
            r.family = cells[0];
            r.n = static_cast<std::size_t>(std::stoull(cells[1]));
            r.sumset_size = Integer(cells[2]);
            r.diffset_size = Integer(cells[3]);
            if (!cells[4].empty()) r.prodset_size = Integer(cells[4]);
            r.e2 = Integer(cells[5]);
            r.e3 = Integer(cells[6]);
            r.e15.value = cells[7].empty() ? 0.0 : std::stod(cells[7]);
            if (!cells[8].empty()) r.margin_thm11 = std::stod(cells[8]);
            if (!cells[9].empty()) r.margin_thm12_plus = std::stod(cells[9]);
            if (!cells[10].empty()) r.margin_thm12_minus = std::stod(cells[10]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            throw ParseError("scan CSV: bad row at line " + std::to_string(lineno));
        }
    }
    return rows;
}

inline double scan_column_value(const ScanRow& r, const std::string& col) {
    if (col == "n") return static_cast<double>(r.n);
    if (col == "sumset") return r.sumset_size.get_d();
    if (col == "diffset") return r.diffset_size.get_d();
    if (col == "prodset") return r.prodset_size ? r.prodset_size->get_d() : 0.0;
    if (col == "E2") return r.e2.get_d();
    if (col == "E3") return r.e3.get_d();
    if (col == "E15") return r.e15.value;
    throw InvalidParameter("fit: unknown numeric column " + col);
}

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // rms in log2 space
};

// Least squares of log2(y) against log2(x).
inline FitResult fit_exponent(const std::vector<ScanRow>& rows, const std::string& xcol,
                              const std::string& ycol) {
    if (rows.size() < 2) throw DegenerateFit("fit: needs at least two rows");
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        double x = scan_column_value(r, xcol);
        double y = scan_column_value(r, ycol);
        if (!(x > 0.0) || !(y > 0.0)) throw DegenerateFit("fit: values must be positive");
        xs.push_back(std::log2(x));
        ys.push_back(std::log2(y));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(ys.size());
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw DegenerateFit("fit: abscissae are all equal");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double resid = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += resid * resid;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(xs.size()));
    return fit;
}

} // namespace convexsum
