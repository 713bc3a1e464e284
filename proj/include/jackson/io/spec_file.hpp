#ifndef JACKSON_IO_SPEC_FILE_HPP
#define JACKSON_IO_SPEC_FILE_HPP

#include <jackson/sets.hpp>

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>

namespace jackson::io {

/// Thrown for malformed spec or config files; the message carries
/// origin:line.
class parse_error : public rejection {
public:
    parse_error(const std::string& origin, int line, const std::string& what)
        : rejection(origin + ":" + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

/// Expected-fail tags a set may declare with `expects:`.
inline const std::set<std::string>& known_expectations()
{
    static const std::set<std::string> tags{"ls_diverges",   "lemma31_fails",    "prop32_fails",    "lemma33_fails",
                                            "lemma42_fails", "condition5_fails", "theorem14_fails", "union44_fails"};
    return tags;
}

struct SetEntry {
    sets::CompactSetSpec spec;
    std::set<std::string> expects;
    int line = 0;

    bool expects_fail(const std::string& tag) const { return expects.count(tag) > 0; }
};

struct SpecFile {
    std::string origin;
    int schema_version = 1;
    std::vector<SetEntry> sets;

    const SetEntry& find(const std::string& name) const
    {
        for (const auto& e : sets)
            if (e.spec.name == name) return e;
        throw rejection(origin + ": no set named '" + name + "'");
    }
};

namespace detail {

class SpecReader {
public:
    explicit SpecReader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const
    {
        throw parse_error(origin_, n.Mark().line + 1, what);
    }

    YAML::Node need(const YAML::Node& n, const char* key, const std::string& ctx) const
    {
        const YAML::Node v = n[key];
        if (!v) fail(n, ctx + ": missing field '" + key + "'");
        return v;
    }

    double real(const YAML::Node& n, const std::string& ctx) const
    {
        try {
            return n.as<double>();
        } catch (const YAML::Exception&) {
            fail(n, ctx + ": expected a real number");
        }
    }

    int integer(const YAML::Node& n, const std::string& ctx) const
    {
        try {
            return n.as<int>();
        } catch (const YAML::Exception&) {
            fail(n, ctx + ": expected an integer");
        }
    }

    /// A complex number is written `x` or `[x, y]`.
    cplx complex(const YAML::Node& n, const std::string& ctx) const
    {
        if (n.IsScalar()) return {real(n, ctx), 0.0};
        if (n.IsSequence() && n.size() == 2) return {real(n[0], ctx), real(n[1], ctx)};
        fail(n, ctx + ": expected a number or [re, im]");
    }

    std::vector<cplx> complex_list(const YAML::Node& n, const std::string& ctx) const
    {
        if (!n.IsSequence()) fail(n, ctx + ": expected a list of points");
        std::vector<cplx> out;
        for (const auto& v : n) out.push_back(complex(v, ctx));
        return out;
    }

    sets::CompactSetSpec set(const YAML::Node& n, const std::string& ctx) const
    {
        if (!n.IsMap()) fail(n, ctx + ": expected a mapping");
        const std::string kind = need(n, "kind", ctx).as<std::string>();
        const std::string where = ctx + " (" + kind + ")";
        sets::CompactSetSpec s;
        if (kind == "disk") {
            s = sets::disk(complex(need(n, "center", where), where + ".center"), real(need(n, "radius", where), where + ".radius"));
        } else if (kind == "segment") {
            s = sets::segment(complex(need(n, "a", where), where + ".a"), complex(need(n, "b", where), where + ".b"));
        } else if (kind == "star") {
            s = sets::star(integer(need(n, "n", where), where + ".n"));
        } else if (kind == "polygon") {
            const bool filled = n["filled"] ? n["filled"].as<bool>() : true;
            s = sets::polygon(complex_list(need(n, "vertices", where), where + ".vertices"), filled);
        } else if (kind == "points") {
            s = sets::points(complex_list(need(n, "points", where), where + ".points"));
        } else if (kind == "tangent_disks") {
            s = sets::tangent_disks();
        } else if (kind == "union") {
            const YAML::Node m = need(n, "members", where);
            if (!m.IsSequence() || m.size() == 0) fail(m, where + ": members must be a nonempty list");
            std::vector<sets::CompactSetSpec> members;
            for (std::size_t i = 0; i < m.size(); ++i) members.push_back(set(m[i], where + ".members[" + std::to_string(i) + "]"));
            s = sets::union_of(std::move(members));
        } else {
            fail(n, ctx + ": unknown kind '" + kind + "'");
        }
        if (const auto o = n["oracle"]) {
            const auto v = o.as<std::string>();
            if (v == "none") s.oracle = sets::OracleKind::none;
            else if (v != "auto") fail(o, where + ": oracle must be 'auto' or 'none'");
        }
        if (const auto t = n["transform"]) {
            const cplx scale = t["scale"] ? complex(t["scale"], where + ".transform.scale") : cplx(1.0, 0.0);
            const cplx shift = t["shift"] ? complex(t["shift"], where + ".transform.shift") : cplx(0.0, 0.0);
            if (scale == cplx(0.0, 0.0)) fail(t, where + ": transform.scale must be nonzero");
            s = sets::affine_image(std::move(s), scale, shift);
        }
        if (const auto nm = n["name"]) s.name = nm.as<std::string>();
        try {
            sets::validate(s);
        } catch (const rejection& e) {
            fail(n, where + ": " + e.what());
        }
        return s;
    }

private:
    std::string origin_;
};

} // namespace detail

/// Parses a set-spec document:
///
///   schema_version: 1
///   sets:
///     - name: unit_disk
///       kind: disk           # disk | segment | star | polygon | points | union | tangent_disks
///       center: [0, 0]
///       radius: 1
///       transform: {scale: [2, 0], shift: [1, 1]}   # optional
///       oracle: auto         # or none
///       expects: [ls_diverges, condition5_fails]    # optional
inline SpecFile parse_spec_text(const std::string& text, const std::string& origin = "<string>")
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw parse_error(origin, e.mark.line + 1, e.msg);
    }
    detail::SpecReader rd(origin);
    if (!root.IsMap()) throw parse_error(origin, 1, "expected a mapping with 'sets'");
    SpecFile out;
    out.origin = origin;
    if (const auto v = root["schema_version"]) out.schema_version = rd.integer(v, "schema_version");
    if (out.schema_version != 1) rd.fail(root["schema_version"], "unsupported schema_version");
    const YAML::Node list = rd.need(root, "sets", "document");
    if (!list.IsSequence() || list.size() == 0) rd.fail(list, "'sets' must be a nonempty list");
    std::set<std::string> names;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const YAML::Node n = list[i];
        SetEntry e;
        e.line = n.Mark().line + 1;
        e.spec = rd.set(n, "sets[" + std::to_string(i) + "]");
        if (!names.insert(e.spec.name).second) rd.fail(n, "duplicate set name '" + e.spec.name + "'");
        if (const auto x = n["expects"]) {
            if (!x.IsSequence()) rd.fail(x, "expects must be a list");
            for (const auto& tag : x) {
                const auto s = tag.as<std::string>();
                if (!known_expectations().count(s)) rd.fail(tag, "unknown expectation '" + s + "'");
                e.expects.insert(s);
            }
        }
        out.sets.push_back(std::move(e));
    }
    return out;
}

inline SpecFile parse_spec_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw rejection("cannot open spec file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str(), path.string());
}

} // namespace jackson::io

#endif
