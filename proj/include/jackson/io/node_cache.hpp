#ifndef JACKSON_IO_NODE_CACHE_HPP
#define JACKSON_IO_NODE_CACHE_HPP

#include <jackson/extremal.hpp>
#include <jackson/io/csv.hpp>

#include <fcntl.h>
#include <sys/file.h>

#include <cinttypes>
#include <sstream>

namespace jackson::io {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

inline std::string hexfloat(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

inline double parse_hexfloat(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw rejection("bad number '" + s + "'");
    return v;
}

/// Identity of a node sequence: set, mesh and construction rule. The degree
/// is not part of it; a longer cached sequence serves shorter requests.
struct NodeKey {
    std::string canonical; // sets::canonical(spec)
    double resolution = 0.0;
    std::string role = "boundary";
    std::string kind = "leja";

    std::string text() const { return canonical + "|" + hexfloat(resolution) + "|" + role + "|" + kind; }
    std::string hash() const { return hex64(fnv1a(text())); }
};

/// Exclusive flock on <dir>/.lock for the lifetime of the object.
class DirLock {
public:
    explicit DirLock(const std::filesystem::path& dir)
    {
        const auto p = (dir / ".lock").string();
        fd_ = ::open(p.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw rejection("cannot open lock file " + p);
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw rejection("cannot lock " + p);
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;
    ~DirLock()
    {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }

private:
    int fd_ = -1;
};

enum class CacheOutcome { hit, computed, recomputed_corrupt, extended };

inline std::string outcome_name(CacheOutcome o)
{
    switch (o) {
    case CacheOutcome::hit: return "hit";
    case CacheOutcome::computed: return "computed";
    case CacheOutcome::recomputed_corrupt: return "recomputed-corrupt";
    case CacheOutcome::extended: return "extended";
    }
    return "?";
}

struct CachedNodes {
    std::shared_ptr<const extremal::NodeSequence> nodes;
    CacheOutcome outcome = CacheOutcome::computed;
    std::filesystem::path file;
};

/// Text record:
///   jackson-nodes 1
///   key <hash> / spec / resolution / role / kind / degree / log_nodal_supnorm
///   node <k> <re> <im> <mesh index>     (doubles as hexfloat)
///   checksum <fnv1a of all preceding bytes>
inline std::string serialize_nodes(const NodeKey& key, const extremal::NodeSequence& s)
{
    std::ostringstream os;
    os << "jackson-nodes 1\n"
       << "key " << key.hash() << "\n"
       << "spec " << key.canonical << "\n"
       << "resolution " << hexfloat(key.resolution) << "\n"
       << "role " << key.role << "\n"
       << "kind " << key.kind << "\n"
       << "degree " << s.degree() << "\n"
       << "log_nodal_supnorm " << hexfloat(s.log_nodal_supnorm) << "\n";
    for (std::size_t k = 0; k < s.nodes.size(); ++k)
        os << "node " << k << " " << hexfloat(s.nodes[k].real()) << " " << hexfloat(s.nodes[k].imag()) << " "
           << s.mesh_index[k] << "\n";
    std::string body = os.str();
    return body + "checksum " + hex64(fnv1a(body)) + "\n";
}

/// Parses a record and checks it against `key` and `mesh`; throws rejection
/// on any mismatch or damage.
inline extremal::NodeSequence deserialize_nodes(const std::string& text, const NodeKey& key,
                                               std::shared_ptr<const sets::Mesh> mesh)
{
    const auto cpos = text.rfind("checksum ");
    if (cpos == std::string::npos) throw rejection("node cache: no checksum");
    const std::string body = text.substr(0, cpos);
    std::string tail = text.substr(cpos + 9);
    while (!tail.empty() && (tail.back() == '\n' || tail.back() == '\r')) tail.pop_back();
    if (tail != hex64(fnv1a(body))) throw rejection("node cache: checksum mismatch");
    std::istringstream in(body);
    std::string line;
    auto field = [&](const std::string& name) {
        if (!std::getline(in, line) || line.rfind(name + " ", 0) != 0) throw rejection("node cache: expected " + name);
        return line.substr(name.size() + 1);
    };
    if (!std::getline(in, line) || line != "jackson-nodes 1") throw rejection("node cache: unknown format");
    if (field("key") != key.hash() || field("spec") != key.canonical ||
        parse_hexfloat(field("resolution")) != key.resolution || field("role") != key.role ||
        field("kind") != key.kind)
        throw rejection("node cache: key mismatch");
    const int degree = std::stoi(field("degree"));
    extremal::NodeSequence s;
    s.kind = key.kind == "leja" ? extremal::NodeKind::leja : extremal::NodeKind::fekete_exact;
    s.log_nodal_supnorm = parse_hexfloat(field("log_nodal_supnorm"));
    s.source_mesh = std::move(mesh);
    for (int k = 0; k <= degree; ++k) {
        std::istringstream ln(field("node"));
        std::string idx, re, im;
        std::size_t mi = 0;
        if (!(ln >> idx >> re >> im >> mi) || idx != std::to_string(k)) throw rejection("node cache: bad node line");
        const cplx z(parse_hexfloat(re), parse_hexfloat(im));
        if (mi >= s.source_mesh->size() || s.source_mesh->points[mi] != z)
            throw rejection("node cache: node does not match the mesh");
        s.nodes.push_back(z);
        s.mesh_index.push_back(mi);
    }
    if (std::getline(in, line)) throw rejection("node cache: trailing data");
    return s;
}

/// First `degree + 1` nodes; the nodal sup norm is recomputed for a prefix.
inline extremal::NodeSequence truncate_nodes(const extremal::NodeSequence& s, int degree)
{
    if (degree == s.degree()) return s;
    extremal::NodeSequence t = s;
    const auto k = static_cast<std::size_t>(degree) + 1;
    t.nodes.resize(k);
    t.mesh_index.resize(k);
    t.log_nodal_supnorm = s.prefix_log_supnorm(k);
    return t;
}

/// Content-addressed store of Leja sequences on boundary meshes.
class NodeCache {
public:
    explicit NodeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    static NodeKey key_for(const sets::CompactSetSpec& spec, double resolution)
    {
        return {sets::canonical(spec), resolution, "boundary", "leja"};
    }

    std::filesystem::path file_for(const NodeKey& key) const { return dir_ / ("nodes-" + key.hash() + ".txt"); }

    /// Leja nodes of degree `degree` on the boundary mesh of `spec`: read
    /// from the cache when a valid record of at least that degree exists,
    /// computed and stored otherwise. Damaged records are recomputed.
    CachedNodes get(const sets::CompactSetSpec& spec, double resolution, int degree) const
    {
        ensure_output_dir(dir_);
        const DirLock lock(dir_);
        const NodeKey key = key_for(spec, resolution);
        CachedNodes out;
        out.file = file_for(key);
        auto mesh = std::make_shared<const sets::Mesh>(sets::build_mesh(spec, sets::MeshRole::boundary(), resolution));
        bool damaged = false;
        if (std::filesystem::exists(out.file)) {
            try {
                std::ifstream in(out.file);
                std::stringstream ss;
                ss << in.rdbuf();
                const auto s = deserialize_nodes(ss.str(), key, mesh);
                if (s.degree() >= degree) {
                    out.nodes = std::make_shared<const extremal::NodeSequence>(truncate_nodes(s, degree));
                    out.outcome = CacheOutcome::hit;
                    return out;
                }
                out.outcome = CacheOutcome::extended;
            } catch (const std::exception&) {
                damaged = true;
            }
        }
        auto s = extremal::leja_points(*mesh, degree);
        s.source_mesh = mesh;
        write(out.file, serialize_nodes(key, s));
        out.nodes = std::make_shared<const extremal::NodeSequence>(std::move(s));
        if (damaged) out.outcome = CacheOutcome::recomputed_corrupt;
        else if (out.outcome != CacheOutcome::extended) out.outcome = CacheOutcome::computed;
        return out;
    }

private:
    static void write(const std::filesystem::path& file, const std::string& text)
    {
        auto tmp = file;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream o(tmp, std::ios::binary);
            o << text;
            if (!o) throw rejection("cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, file);
    }

    std::filesystem::path dir_;
};

} // namespace jackson::io

#endif
