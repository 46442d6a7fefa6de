#include "sparseproc/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ssp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& token, const std::string& key, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + token + "'", key, line);
    }
    if (pos != token.size())
        throw ConfigError("trailing characters after number in '" + token + "'", key, line);
    return v;
}

} // namespace

cplx parse_complex(const std::string& token) {
    std::string s;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty complex value");
    if (s.back() != 'i' && s.back() != 'j') return cplx(std::stod(s), 0.0);
    s.pop_back();
    // split at the last +/- that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" ) return cplx(0.0, 1.0);
        if (s == "-") return cplx(0.0, -1.0);
        return cplx(0.0, std::stod(s));
    }
    const double re = std::stod(s.substr(0, split));
    std::string im = s.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return cplx(re, std::stod(im));
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::stringstream ss(text);
    std::string raw_line, section;
    int line_no = 0;
    while (std::getline(ss, raw_line)) {
        ++line_no;
        const auto hash = raw_line.find('#');
        std::string line = trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line, line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", "", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", line, line_no);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("empty key", "", line_no);
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.entries_.count(full))
            throw ConfigError("duplicate key", full, line_no);
        cfg.entries_[full] = Entry{trim(line.substr(eq + 1)), line_no, false};
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

int KeyValueConfig::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

std::string KeyValueConfig::text(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    const std::string v = it == entries_.end() ? fallback : (it->second.used = true, it->second.value);
    resolved_[key] = v;
    return v;
}

double KeyValueConfig::number(const std::string& key, double fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::ostringstream os;
        os << fallback;
        resolved_[key] = os.str();
        return fallback;
    }
    it->second.used = true;
    resolved_[key] = it->second.value;
    return parse_number(it->second.value, key, it->second.line);
}

std::uint64_t KeyValueConfig::integer(const std::string& key, std::uint64_t fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        resolved_[key] = std::to_string(fallback);
        return fallback;
    }
    it->second.used = true;
    resolved_[key] = it->second.value;
    try {
        return std::stoull(it->second.value);
    } catch (const std::exception&) {
        throw ConfigError("expected a non-negative integer, got '" + it->second.value + "'", key,
                          it->second.line);
    }
}

std::vector<std::string> KeyValueConfig::list(const std::string& key,
                                              const std::vector<std::string>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::string joined;
        for (const auto& v : fallback) joined += (joined.empty() ? "" : ",") + v;
        resolved_[key] = joined;
        return fallback;
    }
    it->second.used = true;
    resolved_[key] = it->second.value;
    return split_commas(it->second.value);
}

std::vector<cplx> KeyValueConfig::complex_list(const std::string& key,
                                               const std::vector<cplx>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::ostringstream os;
        for (std::size_t k = 0; k < fallback.size(); ++k) {
            if (k) os << ",";
            os << fallback[k].real();
            if (fallback[k].imag() != 0.0) os << (fallback[k].imag() > 0 ? "+" : "") << fallback[k].imag() << "i";
        }
        resolved_[key] = os.str();
        return fallback;
    }
    it->second.used = true;
    resolved_[key] = it->second.value;
    std::vector<cplx> out;
    for (const auto& token : split_commas(it->second.value)) {
        try {
            out.push_back(parse_complex(token));
        } catch (const std::exception&) {
            throw ConfigError("expected a complex number, got '" + token + "'", key,
                              it->second.line);
        }
    }
    return out;
}

std::vector<double> KeyValueConfig::number_list(const std::string& key,
                                                const std::vector<double>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        std::ostringstream os;
        for (std::size_t k = 0; k < fallback.size(); ++k) os << (k ? "," : "") << fallback[k];
        resolved_[key] = os.str();
        return fallback;
    }
    it->second.used = true;
    resolved_[key] = it->second.value;
    std::vector<double> out;
    for (const auto& token : split_commas(it->second.value))
        out.push_back(parse_number(token, key, it->second.line));
    return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_)
        if (!entry.used) out.push_back(key);
    return out;
}

void KeyValueConfig::reject_unused() const {
    const auto bad = unused_keys();
    if (!bad.empty())
        throw ConfigError("unknown config key '" + bad.front() + "'", bad.front(),
                          line_of(bad.front()));
}

std::string KeyValueConfig::resolved_summary() const {
    std::string out;
    for (const auto& [key, value] : resolved_) {
        if (!out.empty()) out += " ";
        out += key + "=" + value;
    }
    return out;
}

namespace {

LevyExponent resolve_noise(const KeyValueConfig& cfg) {
    const std::string family = cfg.text("noise.family", "gaussian");
    if (family == "gaussian") return LevyExponent::gaussian();
    if (family == "laplace") return LevyExponent::laplace();
    if (family == "sas") {
        const double alpha = cfg.number("noise.alpha", 1.2);
        if (alpha <= 0.0 || alpha > 2.0)
            throw ConfigError("noise.alpha must lie in (0, 2]", "noise.alpha",
                              cfg.line_of("noise.alpha"));
        return LevyExponent::sas(alpha);
    }
    if (family == "poisson") {
        const double lambda = cfg.number("noise.lambda", 1.0);
        if (lambda < 0.0)
            throw ConfigError("noise.lambda must be >= 0", "noise.lambda",
                              cfg.line_of("noise.lambda"));
        const std::string amp = cfg.text("noise.amplitude", "gaussian");
        const double param = cfg.number("noise.amplitude_param", 1.0);
        AmplitudePdf pdf;
        if (amp == "gaussian") pdf.tag = AmplitudePdf::Tag::Gaussian;
        else if (amp == "laplace") pdf.tag = AmplitudePdf::Tag::Laplace;
        else if (amp == "uniform") pdf.tag = AmplitudePdf::Tag::Uniform;
        else
            throw ConfigError("unknown amplitude law '" + amp + "'", "noise.amplitude",
                              cfg.line_of("noise.amplitude"));
        pdf.param = param;
        return LevyExponent::poisson(lambda, pdf);
    }
    throw ConfigError("unknown noise family '" + family + "'", "noise.family",
                      cfg.line_of("noise.family"));
}

} // namespace

ExperimentSetup resolve_experiment(const KeyValueConfig& cfg, const std::string& experiment) {
    ExperimentSetup setup;

    const cplx default_pole = experiment == "mterm" ? cplx(-0.1, 0.0) : cplx(0.0, 0.0);
    const auto poles = cfg.complex_list("system.poles", {default_pole});
    const auto b = cfg.complex_list("system.b", {cplx(1.0)});
    std::vector<double> boundary_default;
    for (const auto& p : poles)
        if (std::abs(p.real()) <= 1e-9 * std::max(1.0, std::abs(p))) boundary_default.push_back(0.0);
    const auto boundary = cfg.number_list("system.boundary", boundary_default);
    try {
        setup.process.system = SystemSpec::from_poles(poles, b, boundary);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid system: ") + e.what(), "system.poles",
                          cfg.line_of("system.poles"));
    }

    setup.process.noise.exponent = resolve_noise(cfg);
    setup.seed = cfg.integer("run.seed", 1);
    setup.realizations = cfg.integer("run.realizations", 200);
    if (setup.realizations == 0)
        throw ConfigError("run.realizations must be >= 1", "run.realizations",
                          cfg.line_of("run.realizations"));
    setup.format = cfg.text("run.format", "csv");
    if (setup.format != "csv" && setup.format != "json")
        throw ConfigError("run.format must be csv or json", "run.format",
                          cfg.line_of("run.format"));

    const double delta = cfg.number("grid.delta", 1.0 / 16.0);
    if (delta <= 0.0)
        throw ConfigError("grid.delta must be > 0", "grid.delta", cfg.line_of("grid.delta"));
    const auto n = cfg.integer("grid.n", 1025);
    if (n == 0) throw ConfigError("grid.n must be >= 1", "grid.n", cfg.line_of("grid.n"));
    setup.process.grid = GridSpec{cfg.number("grid.t_start", 0.0), delta,
                                  static_cast<std::size_t>(n)};
    setup.process.noise.seed = setup.seed;
    setup.process.noise.delta = delta;

    if (experiment == "pdf") setup.pdf_time = cfg.number("pdf.t", 1.0);
    if (experiment == "stats") {
        setup.tau_max = cfg.number("stats.tau_max", 5.0);
        setup.omega_max = cfg.number("stats.omega_max", 8.0);
    }
    if (experiment == "mterm") {
        setup.transforms = cfg.list("mterm.transforms", {"klt", "dct", "haar", "espline"});
        setup.espline_alpha = cfg.number("mterm.espline_alpha", -0.1);
        setup.levels = static_cast<int>(cfg.integer("mterm.levels", 6));
        setup.signal_length = cfg.integer("mterm.signal_length", 1024);
        setup.oversample = cfg.integer("mterm.oversample", 16);
        if (setup.signal_length == 0 || setup.oversample == 0)
            throw ConfigError("mterm.signal_length and mterm.oversample must be >= 1",
                              "mterm.signal_length", cfg.line_of("mterm.signal_length"));
        for (const auto& t : setup.transforms)
            if (t != "klt" && t != "dct" && t != "haar" && t != "espline")
                throw ConfigError("unknown transform '" + t + "'", "mterm.transforms",
                                  cfg.line_of("mterm.transforms"));
    }

    cfg.reject_unused();
    setup.summary = cfg.resolved_summary();
    return setup;
}

} // namespace ssp
