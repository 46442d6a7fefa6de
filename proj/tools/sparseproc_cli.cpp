#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparseproc/config.hpp"
#include "sparseproc/statistics.hpp"
#include "sparseproc/wavelets.hpp"

using nlohmann::json;
using namespace ssp;

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::string name; ///< output file stem
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

/// Writes all tables at once, each through a temp file + rename so failures
/// never leave partial outputs.
void write_tables(const std::vector<Table>& tables, const std::string& out_dir,
                  const std::string& format, const std::string& summary) {
    std::filesystem::create_directories(out_dir);
    for (const auto& t : tables) {
        const std::string path = out_dir + "/" + t.name + "." + format;
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + tmp);
            if (format == "csv") {
                out << "# config: " << summary << "\n";
                for (std::size_t c = 0; c < t.columns.size(); ++c)
                    out << (c ? "," : "") << t.columns[c];
                out << "\n";
                for (const auto& row : t.rows) {
                    for (std::size_t c = 0; c < row.size(); ++c) {
                        out << (c ? "," : "");
                        if (row[c].is_number())
                            out << format_number(row[c].get<double>());
                        else
                            out << row[c].get<std::string>();
                    }
                    out << "\n";
                }
            } else {
                json doc;
                doc["config"] = summary;
                doc["columns"] = t.columns;
                doc["rows"] = t.rows;
                out << doc.dump(2) << "\n";
            }
            if (!out) throw std::runtime_error("failed while writing " + tmp);
        }
        std::filesystem::rename(tmp, path);
    }
}

std::vector<Table> run_simulate(const ExperimentSetup& setup) {
    const auto& spec = setup.process;
    if (spec.system.order() == 0)
        throw ConfigError("simulate: the system needs at least one pole", "system.poles");
    std::vector<SampledPath> paths(setup.realizations);
    for (std::size_t r = 0; r < setup.realizations; ++r) {
        ProcessSpec one = spec;
        one.noise.stream = r;
        paths[r] = spec.system.imaginary_count() > 0 ? synth_generalized_levy(one)
                                                     : synth_stationary(one);
    }
    Table t;
    t.name = "simulate";
    t.columns.push_back("t");
    for (std::size_t r = 0; r < setup.realizations; ++r)
        t.columns.push_back("r" + std::to_string(r));
    for (std::size_t k = 0; k < spec.grid.n; ++k) {
        std::vector<json> row;
        row.push_back(paths[0].time(k));
        for (const auto& p : paths) row.push_back(p.values[k].real());
        t.rows.push_back(std::move(row));
    }
    return {t};
}

std::vector<Table> run_pdf(const ExperimentSetup& setup) {
    const PdfResult res = first_order_pdf(setup.process, setup.pdf_time);
    Table t;
    t.name = "pdf";
    t.columns = {"x", "density"};
    for (std::size_t k = 0; k < res.pdf.size(); ++k) {
        const double x = res.pdf.axis(k);
        if (std::abs(x) > 5.0) continue;
        t.rows.push_back({x, res.pdf.values[k].real()});
    }
    return {t};
}

std::vector<Table> run_stats(const ExperimentSetup& setup) {
    const SampledPath r = autocorrelation(setup.process, setup.tau_max);
    const SampledPath phi = power_spectrum(setup.process, setup.omega_max, 257);
    Table tr;
    tr.name = "stats_autocorrelation";
    tr.columns = {"tau", "r"};
    for (std::size_t k = 0; k < r.size(); ++k) tr.rows.push_back({r.time(k), r.values[k].real()});
    Table ts;
    ts.name = "stats_spectrum";
    ts.columns = {"omega", "phi"};
    for (std::size_t k = 0; k < phi.size(); ++k)
        ts.rows.push_back({phi.time(k), phi.values[k].real()});
    return {tr, ts};
}

std::vector<Table> run_mterm(const ExperimentSetup& setup) {
    const std::size_t N = setup.signal_length;
    const std::size_t over = setup.oversample;
    const double pole = setup.process.system.poles.empty()
                            ? -0.1
                            : setup.process.system.poles.front().real();
    if (setup.process.system.imaginary_count() > 0)
        throw ConfigError("mterm: the benchmark needs a stationary system", "system.poles");

    const std::vector<double> fractions{0.01, 0.02, 0.03, 0.05, 0.08, 0.1,  0.15, 0.2,
                                        0.3,  0.4,  0.5,  0.6,  0.7,  0.8,  0.9,  1.0};

    // transforms on the unit-spaced sample grid
    const GridSpec sample_grid{0.0, 1.0, N};
    std::vector<std::string> names;
    std::vector<MatrixBasis> matrix_bases;
    std::vector<WaveletBasis> wavelet_bases;
    std::vector<int> kind; // 0 = matrix, 1 = wavelet
    std::vector<std::size_t> index;
    for (const auto& tname : setup.transforms) {
        names.push_back(tname);
        if (tname == "klt") {
            std::vector<double> corr(N);
            for (std::size_t k = 0; k < N; ++k)
                corr[k] = std::exp(-std::abs(pole) * static_cast<double>(k));
            kind.push_back(0);
            index.push_back(matrix_bases.size());
            matrix_bases.push_back(klt_basis(corr, N));
        } else if (tname == "dct") {
            kind.push_back(0);
            index.push_back(matrix_bases.size());
            matrix_bases.push_back(dct_basis(N));
        } else if (tname == "haar") {
            kind.push_back(1);
            index.push_back(wavelet_bases.size());
            wavelet_bases.push_back(haar_basis(sample_grid, setup.levels));
        } else { // espline
            kind.push_back(1);
            index.push_back(wavelet_bases.size());
            wavelet_bases.push_back(
                espline_basis(cplx(setup.espline_alpha, 0.0), sample_grid, setup.levels));
        }
    }

    const std::size_t R = setup.realizations;
    // errors[transform][fraction][realization]
    std::vector<std::vector<std::vector<double>>> errors(
        names.size(), std::vector<std::vector<double>>(fractions.size(), std::vector<double>(R)));

    ProcessSpec base = setup.process;
    base.grid = GridSpec{0.0, 1.0 / static_cast<double>(over), N * over};
    base.noise.delta = base.grid.delta;

    const auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            ProcessSpec one = base;
            one.noise.stream = r;
            const SampledPath path = synth_stationary(one);
            SampledPath sig(0.0, 1.0, N);
            std::vector<double> sigv(N);
            for (std::size_t k = 0; k < N; ++k) {
                const double v = path.values[k * over].real();
                if (!std::isfinite(v)) throw std::runtime_error("mterm: non-finite sample");
                sig.values[k] = v;
                sigv[k] = v;
            }
            for (std::size_t t = 0; t < names.size(); ++t) {
                const auto coeffs = kind[t] == 0 ? analyze(matrix_bases[index[t]], sigv)
                                                 : analyze(wavelet_bases[index[t]], sig);
                for (std::size_t f = 0; f < fractions.size(); ++f) {
                    const auto M = static_cast<std::size_t>(
                        std::lround(fractions[f] * static_cast<double>(N)));
                    // tail-energy ratio of the kept-M expansion
                    std::vector<double> sorted = coeffs;
                    std::sort(sorted.begin(), sorted.end(),
                              [](double a, double b) { return std::abs(a) > std::abs(b); });
                    double total = 0.0, kept = 0.0;
                    for (double c : sorted) total += c * c;
                    for (std::size_t i = 0; i < M && i < sorted.size(); ++i)
                        kept += sorted[i] * sorted[i];
                    const double err = total == 0.0 ? 0.0 : std::max(0.0, (total - kept) / total);
                    if (!std::isfinite(err)) throw std::runtime_error("mterm: non-finite error");
                    errors[t][f][r] = err;
                }
            }
        }
    };
    const std::size_t threads =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), R));
    std::vector<std::thread> pool;
    const std::size_t chunk = (R + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(R, lo + chunk);
        if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();

    Table out;
    out.name = "mterm";
    out.columns = {"transform", "m_over_n", "mean_error", "ci_halfwidth", "median_error"};
    for (std::size_t t = 0; t < names.size(); ++t) {
        for (std::size_t f = 0; f < fractions.size(); ++f) {
            auto& e = errors[t][f];
            double mean = 0.0;
            for (double v : e) mean += v;
            mean /= static_cast<double>(R);
            double var = 0.0;
            for (double v : e) var += (v - mean) * (v - mean);
            var /= static_cast<double>(R > 1 ? R - 1 : 1);
            const double ci = 1.96 * std::sqrt(var / static_cast<double>(R));
            std::sort(e.begin(), e.end());
            const double median = R % 2 ? e[R / 2] : 0.5 * (e[R / 2 - 1] + e[R / 2]);
            out.rows.push_back({names[t], fractions[f], mean, ci, median});
        }
    }
    return {out};
}

std::vector<Table> run_gallery(const ExperimentSetup& setup) {
    const auto entries = gallery(setup.process.grid, setup.seed);
    std::vector<Table> tables;
    const auto exponents = gallery_exponents();
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const auto& entry = entries[e];
        const std::string slug = entry.name.substr(0, entry.name.find('(')); // file-safe stem
        Table tp;
        tp.name = "gallery_" + slug + "_path";
        tp.columns = {"t", "w"};
        for (std::size_t k = 0; k < entry.path.size(); ++k)
            tp.rows.push_back({entry.path.time(k), entry.path.values[k].real()});
        tables.push_back(std::move(tp));

        Table th;
        th.name = "gallery_" + slug + "_increments";
        th.columns = {"bin_center", "frequency", "fitted_density"};
        const PdfResult fit = invert_exponent(exponents[e]);
        const double lo = -5.0, hi = 5.0;
        const std::size_t bins = 41;
        const double width = (hi - lo) / static_cast<double>(bins);
        std::vector<double> counts(bins, 0.0);
        std::size_t inside = 0;
        for (double v : entry.unit_increments) {
            if (v < lo || v >= hi) continue;
            counts[static_cast<std::size_t>((v - lo) / width)] += 1.0;
            ++inside;
        }
        const double denom =
            std::max<std::size_t>(1, entry.unit_increments.size()) * width;
        for (std::size_t bin = 0; bin < bins; ++bin) {
            const double center = lo + width * (static_cast<double>(bin) + 0.5);
            th.rows.push_back({center, counts[bin] / denom, pdf_at(fit.pdf, center)});
        }
        (void)inside;
        tables.push_back(std::move(th));
    }
    return tables;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse stochastic process toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format_override;
    std::uint64_t seed_override = 0;
    std::int64_t realizations_override = -1;
    bool have_seed = false;

    const std::vector<std::string> commands{"simulate", "pdf", "stats", "mterm", "levy-gallery"};
    for (const auto& name : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file (sectioned key=value)");
        sub->add_option("--seed", seed_override, "override run.seed")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--realizations", realizations_override, "override run.realizations");
        sub->add_option("--format", format_override, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const KeyValueConfig cfg = config_path.empty() ? KeyValueConfig::from_string("")
                                                       : KeyValueConfig::from_file(config_path);
        const std::string experiment = command == "levy-gallery" ? "gallery" : command;
        ExperimentSetup setup = resolve_experiment(cfg, experiment);
        if (have_seed) {
            setup.seed = seed_override;
            setup.process.noise.seed = seed_override;
            setup.summary += " override.seed=" + std::to_string(seed_override);
        }
        if (realizations_override >= 0) {
            if (realizations_override == 0) throw ConfigError("realizations must be >= 1");
            setup.realizations = static_cast<std::size_t>(realizations_override);
            setup.summary += " override.realizations=" + std::to_string(realizations_override);
        }
        if (!format_override.empty()) {
            setup.format = format_override;
            setup.summary += " override.format=" + format_override;
        }

        std::vector<Table> tables;
        if (command == "simulate") tables = run_simulate(setup);
        else if (command == "pdf") tables = run_pdf(setup);
        else if (command == "stats") tables = run_stats(setup);
        else if (command == "mterm") tables = run_mterm(setup);
        else tables = run_gallery(setup);
        write_tables(tables, out_dir, setup.format, setup.summary);
        for (const auto& t : tables)
            std::cout << out_dir << "/" << t.name << "." << setup.format << "\n";
        return 0;
    } catch (const ConfigError& e) {
        json err;
        err["error"] = {{"message", e.what()}, {"key", e.key}, {"line", e.line}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
