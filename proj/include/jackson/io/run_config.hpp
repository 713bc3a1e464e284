#ifndef JACKSON_IO_RUN_CONFIG_HPP
#define JACKSON_IO_RUN_CONFIG_HPP

#include <jackson/approx.hpp>
#include <jackson/io/spec_file.hpp>

#include <yaml-cpp/yaml.h>

#include <charconv>

namespace jackson::io {

inline const std::vector<std::string>& known_commands()
{
    static const std::vector<std::string> c{"mesh", "green", "leja", "approx", "jackson", "exponents", "verify", "cache"};
    return c;
}

inline const std::vector<std::string>& known_verifications()
{
    static const std::vector<std::string> v{"lemma31", "prop32", "lemma33", "lemma42", "condition5", "theorem14", "union44"};
    return v;
}

/// Everything a batch run needs. Grids are strictly monotone: degrees, ell
/// and window sizes increase, scales and resolutions decrease (coarse first).
struct RunConfig {
    std::string spec;                 // set-spec file
    std::string command = "verify";
    std::string verify = "lemma31";   // for command = verify
    std::vector<std::string> sets;    // subset of the spec file; empty = all
    int degree = 400;                 // nodal Green / Leja / cache degree
    std::vector<int> degrees{1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 45, 60};
    std::vector<double> scales{0.25, 0.125, 0.0625, 0.03125, 0.015625};
    std::vector<double> ell{1, 2, 4, 8};
    std::vector<double> resolutions{0.01, 0.005};
    double nodal_resolution = 0.005;  // boundary mesh for Leja nodes
    std::vector<std::string> functions{"cauchy(2,0)"};
    double window_pad = 1.0;          // green: window = bounding box + pad
    int window_points = 41;           // green: samples per side
    std::string cache = ".jackson-cache";
    std::string out = "out";
    bool deterministic = true;        // always on
    bool expect_fail = false;

    bool operator==(const RunConfig&) const = default;
};

/// cauchy(re[,im]), poly(c0,c1,...), abs, conj, constant(re[,im]).
inline approx::TestFunction parse_function(const std::string& text)
{
    const auto open = text.find('(');
    const std::string name = text.substr(0, open);
    std::vector<double> args;
    if (open != std::string::npos) {
        if (text.back() != ')') throw rejection("function '" + text + "': missing ')'");
        const std::string inner = text.substr(open + 1, text.size() - open - 2);
        std::size_t pos = 0;
        while (pos <= inner.size() && !inner.empty()) {
            const auto comma = std::min(inner.find(',', pos), inner.size());
            std::string tok = inner.substr(pos, comma - pos);
            tok.erase(0, tok.find_first_not_of(' '));
            double v = 0.0;
            const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || p != tok.data() + tok.size())
                throw rejection("function '" + text + "': bad argument '" + tok + "'");
            args.push_back(v);
            pos = comma + 1;
        }
    }
    auto complex_arg = [&]() -> cplx {
        if (args.empty() || args.size() > 2) throw rejection("function '" + text + "': expected 1 or 2 arguments");
        return {args[0], args.size() == 2 ? args[1] : 0.0};
    };
    if (name == "cauchy") return approx::cauchy(complex_arg());
    if (name == "constant") return approx::constant_fn(complex_arg());
    if (name == "poly") {
        if (args.empty()) throw rejection("function '" + text + "': poly needs coefficients");
        return approx::poly(std::vector<cplx>(args.begin(), args.end()));
    }
    if (name == "abs" && args.empty()) return approx::abs_fn();
    if (name == "conj" && args.empty()) return approx::conj_fn();
    throw rejection("unknown function '" + text + "'");
}

namespace detail {

template <class T, class Less>
void check_grid(const std::vector<T>& g, const std::string& name, Less less)
{
    if (g.empty()) throw rejection("config: " + name + " must be nonempty");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!less(g[i - 1], g[i])) throw rejection("config: " + name + " must be strictly sorted");
}

} // namespace detail

inline void validate(const RunConfig& c)
{
    if (std::find(known_commands().begin(), known_commands().end(), c.command) == known_commands().end())
        throw rejection("config: unknown command '" + c.command + "'");
    if (std::find(known_verifications().begin(), known_verifications().end(), c.verify) == known_verifications().end())
        throw rejection("config: unknown verification '" + c.verify + "'");
    detail::check_grid(c.degrees, "degrees", std::less<>{});
    detail::check_grid(c.ell, "ell", std::less<>{});
    detail::check_grid(c.scales, "scales", std::greater<>{});
    detail::check_grid(c.resolutions, "resolutions", std::greater<>{});
    if (c.degrees.front() < 1) throw rejection("config: degrees must be positive");
    if (c.ell.front() < 1.0) throw rejection("config: ell must be at least 1");
    if (!(c.scales.back() > 0.0) || c.scales.front() > 1.0) throw rejection("config: scales must lie in (0, 1]");
    if (!(c.resolutions.back() > 0.0)) throw rejection("config: resolutions must be positive");
    if (c.degree < 1) throw rejection("config: degree must be positive");
    if (!(c.nodal_resolution > 0.0)) throw rejection("config: nodal_resolution must be positive");
    if (c.window_points < 2 || !(c.window_pad >= 0.0)) throw rejection("config: bad green window");
    if (!c.deterministic) throw rejection("config: deterministic cannot be turned off");
    for (const auto& f : c.functions) parse_function(f);
}

inline std::string to_yaml(const RunConfig& c)
{
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "spec" << YAML::Value << c.spec;
    e << YAML::Key << "command" << YAML::Value << c.command;
    e << YAML::Key << "verify" << YAML::Value << c.verify;
    e << YAML::Key << "sets" << YAML::Value << YAML::Flow << c.sets;
    e << YAML::Key << "degree" << YAML::Value << c.degree;
    e << YAML::Key << "degrees" << YAML::Value << YAML::Flow << c.degrees;
    e << YAML::Key << "scales" << YAML::Value << YAML::Flow << c.scales;
    e << YAML::Key << "ell" << YAML::Value << YAML::Flow << c.ell;
    e << YAML::Key << "resolutions" << YAML::Value << YAML::Flow << c.resolutions;
    e << YAML::Key << "nodal_resolution" << YAML::Value << c.nodal_resolution;
    e << YAML::Key << "functions" << YAML::Value << YAML::Flow << c.functions;
    e << YAML::Key << "window_pad" << YAML::Value << c.window_pad;
    e << YAML::Key << "window_points" << YAML::Value << c.window_points;
    e << YAML::Key << "cache" << YAML::Value << c.cache;
    e << YAML::Key << "out" << YAML::Value << c.out;
    e << YAML::Key << "deterministic" << YAML::Value << c.deterministic;
    e << YAML::Key << "expect_fail" << YAML::Value << c.expect_fail;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

/// Unknown keys are errors; absent keys keep their defaults.
inline RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>")
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw parse_error(origin, e.mark.line + 1, e.msg);
    }
    RunConfig c;
    if (root.IsNull()) return c;
    if (!root.IsMap()) throw parse_error(origin, 1, "config must be a mapping");
    auto read = [&](const YAML::Node& v, auto& field, const std::string& key) {
        try {
            field = v.as<std::remove_reference_t<decltype(field)>>();
        } catch (const YAML::Exception&) {
            throw parse_error(origin, v.Mark().line + 1, "bad value for '" + key + "'");
        }
    };
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        const YAML::Node& v = kv.second;
        if (key == "spec") read(v, c.spec, key);
        else if (key == "command") read(v, c.command, key);
        else if (key == "verify") read(v, c.verify, key);
        else if (key == "sets") read(v, c.sets, key);
        else if (key == "degree") read(v, c.degree, key);
        else if (key == "degrees") read(v, c.degrees, key);
        else if (key == "scales") read(v, c.scales, key);
        else if (key == "ell") read(v, c.ell, key);
        else if (key == "resolutions") read(v, c.resolutions, key);
        else if (key == "nodal_resolution") read(v, c.nodal_resolution, key);
        else if (key == "functions") read(v, c.functions, key);
        else if (key == "window_pad") read(v, c.window_pad, key);
        else if (key == "window_points") read(v, c.window_points, key);
        else if (key == "cache") read(v, c.cache, key);
        else if (key == "out") read(v, c.out, key);
        else if (key == "deterministic") read(v, c.deterministic, key);
        else if (key == "expect_fail") read(v, c.expect_fail, key);
        else throw parse_error(origin, kv.first.Mark().line + 1, "unknown config key '" + key + "'");
    }
    try {
        validate(c);
    } catch (const rejection& e) {
        throw parse_error(origin, 1, e.what());
    }
    return c;
}

inline RunConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw rejection("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

} // namespace jackson::io

#endif
