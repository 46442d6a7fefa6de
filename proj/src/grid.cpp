#include "sparseproc/grid.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace ssp {

cplx inner_product(const SampledPath& x, const SampledPath& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner_product: size mismatch");
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) sum += x.values[i] * std::conj(y.values[i]);
    return sum * x.delta;
}

double norm_l2(const SampledPath& x) {
    double sum = 0.0;
    for (const auto& v : x.values) sum += std::norm(v);
    return std::sqrt(sum * x.delta);
}

namespace {

class AtomicFile {
public:
    explicit AtomicFile(const std::string& path) : path_(path), tmp_(path + ".tmp") {
        fp_ = std::fopen(tmp_.c_str(), "w");
        if (!fp_) throw std::runtime_error("cannot open output file: " + tmp_);
    }
    ~AtomicFile() {
        if (fp_) {
            std::fclose(fp_);
            std::remove(tmp_.c_str());
        }
    }
    std::FILE* get() { return fp_; }
    void commit() {
        std::fclose(fp_);
        fp_ = nullptr;
        std::filesystem::rename(tmp_, path_);
    }

private:
    std::string path_, tmp_;
    std::FILE* fp_;
};

} // namespace

void write_csv(const CharGrid& grid, const std::string& path, const std::string& comment) {
    AtomicFile out(path);
    if (!comment.empty()) std::fprintf(out.get(), "# %s\n", comment.c_str());
    if (grid.domain == CharGrid::Domain::Amplitude) {
        std::fprintf(out.get(), "x,pdf\n");
        for (std::size_t k = 0; k < grid.size(); ++k)
            std::fprintf(out.get(), "%.17g,%.17g\n", grid.axis(k), grid.values[k].real());
    } else {
        std::fprintf(out.get(), "axis,re,im\n");
        for (std::size_t k = 0; k < grid.size(); ++k)
            std::fprintf(out.get(), "%.17g,%.17g,%.17g\n", grid.axis(k), grid.values[k].real(),
                         grid.values[k].imag());
    }
    out.commit();
}

void write_csv(const SampledPath& path_data, const std::string& path, const std::string& comment) {
    AtomicFile out(path);
    if (!comment.empty()) std::fprintf(out.get(), "# %s\n", comment.c_str());
    const bool complex_valued = path_data.max_abs_imag() > 1e-12;
    if (complex_valued) {
        std::fprintf(out.get(), "t,re,im\n");
        for (std::size_t k = 0; k < path_data.size(); ++k)
            std::fprintf(out.get(), "%.17g,%.17g,%.17g\n", path_data.time(k),
                         path_data.values[k].real(), path_data.values[k].imag());
    } else {
        std::fprintf(out.get(), "t,value\n");
        for (std::size_t k = 0; k < path_data.size(); ++k)
            std::fprintf(out.get(), "%.17g,%.17g\n", path_data.time(k), path_data.values[k].real());
    }
    out.commit();
}

} // namespace ssp
