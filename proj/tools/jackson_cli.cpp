#include <jackson/io/csv.hpp>
#include <jackson/io/node_cache.hpp>
#include <jackson/io/run_config.hpp>
#include <jackson/io/spec_file.hpp>
#include <jackson/verify.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace fs = std::filesystem;
using namespace jackson;
using io::Cell;
using io::CsvWriter;
using io::RunConfig;

namespace {

constexpr double reliable_distance = 1.0 / 32; // nodal Green values closer to E are flagged

struct Context {
    RunConfig cfg;
    io::SpecFile specs;
    std::vector<const io::SetEntry*> sets;
    fs::path out;

    std::string set_hash(const sets::CompactSetSpec& s) const { return io::hex64(io::fnv1a(sets::canonical(s))); }
    fs::path file(const std::string& name) const { return out / name; }

    std::shared_ptr<const extremal::NodeSequence> nodes(const sets::CompactSetSpec& s, io::CacheOutcome* outcome = nullptr) const
    {
        if (cfg.cache.empty()) {
            const auto mesh = std::make_shared<const sets::Mesh>(
                sets::build_mesh(s, sets::MeshRole::boundary(), cfg.nodal_resolution));
            auto seq = extremal::leja_points(*mesh, cfg.degree);
            seq.source_mesh = mesh;
            if (outcome) *outcome = io::CacheOutcome::computed;
            return std::make_shared<const extremal::NodeSequence>(std::move(seq));
        }
        const auto got = io::NodeCache(cfg.cache).get(s, cfg.nodal_resolution, cfg.degree);
        if (outcome) *outcome = got.outcome;
        return got.nodes;
    }

    std::vector<verify::Target> targets() const
    {
        std::vector<verify::Target> t;
        for (const auto* e : sets) t.push_back({e->spec, e->expects});
        return t;
    }

    regularity::JPOptions jp() const
    {
        regularity::JPOptions o;
        o.ell_grid = cfg.ell;
        o.t_grid = cfg.scales;
        o.n_grid = cfg.degrees;
        o.resolution = cfg.resolutions.front();
        return o;
    }
};

Cell d(double x) { return x; }
Cell i(long long x) { return x; }
Cell s(std::string x) { return x; }

// -- mesh --------------------------------------------------------------------------

int cmd_mesh(const Context& c)
{
    const double res = c.cfg.resolutions.front();
    const std::vector<std::string> cols{"re", "im", "role", "t"};
    auto dump = [&](const sets::Mesh& m, const std::string& set, const std::string& tag) {
        const auto name = "mesh_" + set + "_" + tag + ".csv";
        CsvWriter w(c.file(name), "mesh of " + set + " (" + m.role.name() + ") at resolution " + io::fmt(res), cols);
        for (auto z : m.points) w.row({d(z.real()), d(z.imag()), s(m.role.name()), d(m.role.param)});
        w.close();
        std::cout << set << " " << m.role.name() << " t=" << io::fmt(m.role.param) << " rows=" << w.rows() << "\n";
    };
    for (const auto* e : c.sets) {
        const auto& sp = e->spec;
        dump(sets::build_mesh(sp, sets::MeshRole::interior_fill(), res), sp.name, "E");
        dump(sets::build_mesh(sp, sets::MeshRole::boundary(), res), sp.name, "boundary");
        for (std::size_t k = 0; k < c.cfg.scales.size(); ++k)
            dump(sets::build_mesh(sp, sets::MeshRole::shell(c.cfg.scales[k]), res), sp.name, "shell" + std::to_string(k));
    }
    return 0;
}

// -- green -------------------------------------------------------------------------

int cmd_green(const Context& c)
{
    for (const auto* e : c.sets) {
        const auto& sp = e->spec;
        io::CacheOutcome outcome{};
        const auto nodes = c.nodes(sp, &outcome);
        const bool oracle = sets::has_oracle(sp);
        const auto geo = sets::lower(sp);
        const auto box = extremal::padded_box(sp, c.cfg.window_pad);
        CsvWriter w(c.file("green_" + sp.name + ".csv"),
                    "Green function of " + sp.name + ": oracle vs nodal estimate at degree " + std::to_string(c.cfg.degree) +
                        "; nodal_reliable = dist >= " + io::fmt(reliable_distance),
                    {"re", "im", "dist", "g_oracle", "g_nodal", "abs_diff", "nodal_reliable"});
        const int k = c.cfg.window_points;
        double worst = 0.0;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                const cplx z(box.xmin + box.width() * a / (k - 1), box.ymin + box.height() * b / (k - 1));
                const double dist = sets::distance(geo, z);
                const double gn = extremal::green_estimate(*nodes, z);
                const double go = oracle ? sets::green_oracle(sp, z) : std::nan("");
                const double diff = std::abs(gn - go);
                if (oracle && dist >= 0.1) worst = std::max(worst, diff);
                w.row({d(z.real()), d(z.imag()), d(dist), d(go), d(gn), d(diff), i(dist >= reliable_distance)});
            }
        w.close();
        std::cout << sp.name << " rows=" << w.rows() << " nodes=" << io::outcome_name(outcome);
        if (oracle) std::cout << " max_abs_diff(dist>=0.1)=" << io::fmt(worst);
        else std::cout << " (no oracle: nodal only)";
        std::cout << "\n";
    }
    return 0;
}

// -- leja / cache --------------------------------------------------------------------

int cmd_leja(const Context& c)
{
    for (const auto* e : c.sets) {
        const auto& sp = e->spec;
        io::CacheOutcome outcome{};
        const auto nodes = c.nodes(sp, &outcome);
        CsvWriter w(c.file("leja_" + sp.name + ".csv"),
                    "Leja sequence of " + sp.name + " on the boundary mesh at resolution " + io::fmt(c.cfg.nodal_resolution),
                    {"k", "re", "im", "mesh_index"});
        for (std::size_t k = 0; k < nodes->nodes.size(); ++k)
            w.row({i(static_cast<long long>(k)), d(nodes->nodes[k].real()), d(nodes->nodes[k].imag()),
                   i(static_cast<long long>(nodes->mesh_index[k]))});
        w.close();
        const double np1 = static_cast<double>(nodes->nodes.size());
        std::cout << sp.name << " degree=" << nodes->degree() << " log_nodal_supnorm=" << io::fmt(nodes->log_nodal_supnorm)
                  << " capacity_estimate=" << io::fmt(std::exp(nodes->log_nodal_supnorm / np1))
                  << " nodes=" << io::outcome_name(outcome) << "\n";
    }
    return 0;
}

int cmd_cache(const Context& c)
{
    if (c.cfg.cache.empty()) throw rejection("cache: no cache directory configured");
    const io::NodeCache cache(c.cfg.cache);
    for (const auto* e : c.sets) {
        const auto got = cache.get(e->spec, c.cfg.nodal_resolution, c.cfg.degree);
        std::cout << e->spec.name << " degree=" << c.cfg.degree << " " << io::outcome_name(got.outcome) << " "
                  << got.file.string() << "\n";
    }
    return 0;
}

// -- approx / jackson ----------------------------------------------------------------

struct Sequence {
    std::vector<approx::ApproxResult> results;
    double fnorm = 0.0;
};

Sequence approx_sequence(const Context& c, const sets::CompactSetSpec& sp, const approx::TestFunction& f)
{
    const auto role = f.holomorphic ? sets::MeshRole::boundary() : sets::MeshRole::interior_fill();
    const int n_max = c.cfg.degrees.back();
    // halve the resolution until the mesh carries 8 n_max points
    double res = c.cfg.resolutions.front();
    auto mesh = sets::build_mesh(sp, role, res);
    while (mesh.size() < 8 * static_cast<std::size_t>(n_max) && res > 1e-5)
        mesh = sets::build_mesh(sp, role, res /= 2);
    const auto nodes = extremal::leja_points(mesh, n_max);
    const auto vals = f.sample(mesh.points);
    Sequence out;
    out.results = approx::best_approx_sequence(mesh, vals, n_max, extremal::make_basis(nodes));
    for (auto v : vals) out.fnorm = std::max(out.fnorm, std::abs(v));
    return out;
}

int cmd_approx(const Context& c)
{
    CsvWriter w(c.file("approx.csv"), "best uniform approximation error on the mesh of E (boundary mesh for holomorphic f)",
                {"set_hash", "set", "function", "n", "error", "lower", "method", "stalled"});
    for (const auto* e : c.sets)
        for (const auto& fname : c.cfg.functions) {
            const auto f = io::parse_function(fname);
            const auto seq = approx_sequence(c, e->spec, f);
            for (int n : c.cfg.degrees) {
                const auto& r = seq.results[static_cast<std::size_t>(n)];
                w.row({s(c.set_hash(e->spec)), s(e->spec.name), s(fname), i(n), d(r.error), d(r.lower),
                       s(approx::method_name(r.method)), i(r.stalled)});
            }
            std::cout << e->spec.name << " " << fname << " error(n=" << c.cfg.degrees.back()
                      << ")=" << io::fmt(seq.results.back().error) << "\n";
        }
    w.close();
    return 0;
}

int cmd_jackson(const Context& c)
{
    CsvWriter w(c.file("jackson.csv"), "Jackson norm ||f|| + max_{1<=n<=N} n^ell dist(f, P_n) on the mesh of E",
                {"set_hash", "set", "function", "ell", "value", "sup_term", "n_max", "attained_at", "tail_flag"});
    for (const auto* e : c.sets)
        for (const auto& fname : c.cfg.functions) {
            const auto seq = approx_sequence(c, e->spec, io::parse_function(fname));
            std::vector<double> dists;
            for (const auto& r : seq.results) dists.push_back(r.error);
            for (double ell : c.cfg.ell) {
                const auto v = approx::jackson_norm_from(seq.fnorm, dists, ell);
                w.row({s(c.set_hash(e->spec)), s(e->spec.name), s(fname), d(ell), d(v.value), d(v.sup_term), i(v.n_max),
                       i(v.attained_at), i(v.tail_flag)});
                std::cout << e->spec.name << " " << fname << " ell=" << io::fmt(ell) << " value=" << io::fmt(v.value)
                          << (v.tail_flag ? " (attained at N_max)" : "") << "\n";
            }
        }
    w.close();
    return 0;
}

// -- exponents -----------------------------------------------------------------------

int cmd_exponents(const Context& c)
{
    CsvWriter fits(c.file("exponents.csv"), "LS and HCP exponent fits of log g against log t, coarsest scale dropped",
                   {"set_hash", "set", "kind", "source", "status", "exponent", "slope", "M_hat", "residual", "divergent",
                    "expected_divergence"});
    CsvWriter samples(c.file("exponent_samples.csv"), "worst shell value of g per scale (min for LS, max for HCP)",
                      {"set", "kind", "source", "t", "g", "where_re", "where_im", "shell_points"});
    for (const auto* e : c.sets) {
        const auto& sp = e->spec;
        std::vector<std::pair<std::string, extremal::GreenFn>> sources;
        if (sets::has_oracle(sp)) sources.emplace_back("oracle", extremal::oracle_green(sp));
        sources.emplace_back("nodal(" + std::to_string(c.cfg.degree) + ")", extremal::nodal_green(c.nodes(sp)));
        for (const auto& [name, g] : sources)
            for (auto kind : {regularity::FitKind::ls, regularity::FitKind::hcp}) {
                const std::string kname = kind == regularity::FitKind::ls ? "ls" : "hcp";
                const bool xdiv = kind == regularity::FitKind::ls && e->expects_fail("ls_diverges");
                try {
                    const auto f = regularity::fit_exponent(sp, kind, g, name, c.cfg.scales);
                    fits.row({s(c.set_hash(sp)), s(sp.name), s(kname), s(name), s("ok"), d(f.exponent), d(f.slope),
                              d(f.M_hat), d(f.residual), i(f.divergent), i(xdiv)});
                    for (const auto& x : f.samples)
                        samples.row({s(sp.name), s(kname), s(name), d(x.t), d(x.g), d(x.where.real()), d(x.where.imag()),
                                     i(static_cast<long long>(x.shell_points))});
                    std::cout << sp.name << " " << kname << " " << name << " exponent=" << io::fmt(f.exponent)
                              << (f.divergent ? " divergent" : "") << "\n";
                } catch (const rejection& err) {
                    const double nan = std::nan("");
                    fits.row({s(c.set_hash(sp)), s(sp.name), s(kname), s(name), s(err.what()), d(nan), d(nan), d(nan),
                              d(nan), i(0), i(xdiv)});
                    std::cout << sp.name << " " << kname << " " << name << " rejected: " << err.what() << "\n";
                }
            }
    }
    fits.close();
    samples.close();
    return 0;
}

// -- verify --------------------------------------------------------------------------

verify::Matrix run_matrix(const Context& c)
{
    const auto& which = c.cfg.verify;
    const auto targets = c.targets();
    if (which == "lemma31") {
        verify::Lemma31Options o;
        o.resolution = c.cfg.resolutions.front();
        return verify::lemma31(targets, o);
    }
    if (which == "prop32") {
        std::vector<verify::Prop32Instance> in;
        for (const auto& t : targets)
            for (const auto& f : c.cfg.functions)
                for (int n : c.cfg.degrees)
                    if (n <= 12) in.push_back({t, io::parse_function(f), 0.5, n, c.cfg.resolutions.front()});
        return verify::prop32(in);
    }
    if (which == "lemma33") {
        verify::Lemma33Options o;
        o.resolution = c.cfg.resolutions.front();
        return verify::lemma33(targets, o);
    }
    if (which == "lemma42") return verify::lemma42(targets);
    if (which == "condition5") return verify::condition5(targets, c.jp());
    if (which == "theorem14") return verify::theorem14(targets, c.jp());
    if (which == "union44") return verify::union44(targets, c.jp());
    throw rejection("unknown verification '" + which + "'");
}

void write_condition5(const Context& c, const verify::Matrix& m)
{
    CsvWriter lhs(c.file("condition5_lhs.csv"),
                  "log of sup_n n^ell / phi_{n+1}(t): direct over the degree grid, tail beyond it",
                  {"set", "ell", "t", "log_direct", "n_direct", "log_tail", "n_tail", "log_lhs", "from_tail"});
    CsvWriter phi(c.file("condition5_phi.csv"), "phi_{n+1}(t) = inf over the shell of Phi_{n+1}",
                  {"set", "n", "t", "phi", "phi_upper", "argmin_re", "argmin_im", "evaluated"});
    CsvWriter cand(c.file("condition5_candidates.csv"), "feasibility of each candidate s",
                   {"set", "s", "c_v1", "c_v2", "max_rate", "feasible", "violations"});
    for (std::size_t k = 0; k < m.reports.size(); ++k) {
        const auto& r = m.reports[k];
        const std::string set = m.checks[k].set;
        for (const auto& e : r.lhs)
            lhs.row({s(set), d(e.ell), d(e.t), d(e.log_direct), i(e.n_direct), d(e.log_tail), d(e.n_tail), d(e.log_lhs()),
                     i(e.from_tail())});
        for (const auto& p : r.phi)
            phi.row({s(set), i(p.n), d(p.t), d(p.phi), d(p.phi_upper), d(p.argmin.real()), d(p.argmin.imag()),
                     i(static_cast<long long>(p.evaluated))});
        for (const auto& cr : r.candidates)
            cand.row({s(set), d(cr.s), d(cr.c_v1), d(cr.c_v2), d(cr.max_rate), i(cr.feasible),
                      i(static_cast<long long>(cr.violations.size()))});
    }
    lhs.close();
    phi.close();
    cand.close();
}

int cmd_verify(const Context& c)
{
    const auto m = run_matrix(c);
    CsvWriter w(c.file("verify_" + m.which + ".csv"),
                m.which + " verification matrix: pass means measured satisfies the bound; ok = pass unless expected to fail",
                {"set", "node", "measured", "bound", "pass", "expected_fail", "ok", "note"});
    for (const auto& k : m.checks)
        w.row({s(k.set), s(k.node), d(k.measured), d(k.bound), i(k.pass), i(k.expected_fail), i(k.ok()), s(k.note)});
    w.close();
    if (m.which == "condition5") write_condition5(c, m);

    std::ostringstream sum;
    sum << "verify " << m.which << ": " << m.checks.size() << " checks, " << m.failures() << " failed\n";
    for (const auto& k : m.checks)
        if (!k.ok() || m.which == "condition5" || m.which == "theorem14" || m.which == "union44" || m.which == "lemma42")
            sum << "  " << (k.ok() ? "ok  " : "FAIL") << " " << k.set << " [" << k.node << "] measured=" << io::fmt(k.measured)
                << " bound=" << io::fmt(k.bound) << (k.expected_fail ? " (expected fail)" : "") << " " << k.note << "\n";
    for (std::size_t k = 0; k < m.reports.size(); ++k) {
        const auto& r = m.reports[k];
        sum << "  " << m.checks[k].set << ": s_min=" << io::fmt(r.s_min) << " c~=" << io::fmt(r.c_tilde) << " v=" << r.v
            << " sigma/ell=";
        for (std::size_t l = 0; l < r.ell_grid.size(); ++l) sum << (l ? "," : "") << io::fmt(r.sigma[l] / r.ell_grid[l]);
        sum << "\n";
    }
    sum << "result: " << (m.ok() ? "PASS" : "FAIL") << "\n";
    {
        std::ofstream(c.file("verify_" + m.which + ".txt")) << sum.str();
    }
    std::cout << sum.str() << "elapsed " << io::fmt(m.seconds) << " s\n";
    const bool ok = m.ok();
    return c.cfg.expect_fail ? (ok ? 1 : 0) : (ok ? 0 : 1);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Polynomial approximation and regularity experiments on compact planar sets"};
    app.require_subcommand(1);
    std::string config_path, spec_path, out_dir, cache_dir, resolution;
    std::vector<double> scales, ell;
    std::vector<std::string> only;
    int degree = 0;
    bool expect_fail = false;
    app.add_option("--config", config_path, "run configuration (YAML)")->check(CLI::ExistingFile);
    app.add_option("--spec", spec_path, "set-spec file; overrides the config")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--cache", cache_dir, "node cache directory ('' disables)");
    app.add_option("--degree", degree, "nodal Green / Leja / cache degree")->check(CLI::PositiveNumber);
    app.add_option("--scales", scales, "scales t, comma separated, decreasing")->delimiter(',');
    app.add_option("--ell", ell, "exponents ell, comma separated, increasing")->delimiter(',');
    app.add_option("--resolution", resolution, "mesh resolution; replaces the configured list");
    app.add_option("--sets", only, "restrict to these set names")->delimiter(',');
    app.add_flag("--expect-fail", expect_fail, "exit 0 iff the verification fails");

    std::string which;
    for (const auto& name : io::known_commands()) {
        auto* sub = app.add_subcommand(name);
        if (name == "verify")
            sub->add_option("which", which, "lemma31 | prop32 | lemma33 | lemma42 | condition5 | theorem14 | union44")
                ->required()
                ->check(CLI::IsMember(io::known_verifications()));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        Context c;
        if (!config_path.empty()) c.cfg = io::parse_config_file(config_path);
        c.cfg.command = app.get_subcommands().front()->get_name();
        if (!which.empty()) c.cfg.verify = which;
        if (!spec_path.empty()) c.cfg.spec = spec_path;
        if (app.count("--out")) c.cfg.out = out_dir;
        if (app.count("--cache")) c.cfg.cache = cache_dir;
        if (degree > 0) c.cfg.degree = degree;
        if (!scales.empty()) c.cfg.scales = scales;
        if (!ell.empty()) c.cfg.ell = ell;
        if (!resolution.empty()) c.cfg.resolutions = {std::stod(resolution)};
        if (!only.empty()) c.cfg.sets = only;
        if (expect_fail) c.cfg.expect_fail = true;
        io::validate(c.cfg);
        if (c.cfg.spec.empty()) throw rejection("no set-spec file: pass --spec or set 'spec' in the config");
        c.specs = io::parse_spec_file(c.cfg.spec);
        if (c.cfg.sets.empty())
            for (const auto& e : c.specs.sets) c.sets.push_back(&e);
        else
            for (const auto& n : c.cfg.sets) c.sets.push_back(&c.specs.find(n));
        c.out = c.cfg.out;
        io::ensure_output_dir(c.out);
        {
            std::ofstream(c.file("config.yaml")) << io::to_yaml(c.cfg);
        }
        const auto& cmd = c.cfg.command;
        if (cmd == "mesh") return cmd_mesh(c);
        if (cmd == "green") return cmd_green(c);
        if (cmd == "leja") return cmd_leja(c);
        if (cmd == "approx") return cmd_approx(c);
        if (cmd == "jackson") return cmd_jackson(c);
        if (cmd == "exponents") return cmd_exponents(c);
        if (cmd == "verify") return cmd_verify(c);
        return cmd_cache(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
