// Command-line front end: parse graph/extension/matrix files, run the
// computations, print text, JSON or DOT.
//
// Exit codes (stable contract): 0 success, 2 parse/usage/file problems,
// 3 violated mathematical hypothesis, 4 mismatched inputs, 1 internal error.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <graphext/graphext.hpp>

namespace gx = graphext;
using gx::json;

namespace {

int classify_exit(const std::exception& ex) {
    if (dynamic_cast<const gx::ParseError*>(&ex)) return 2;
    if (dynamic_cast<const gx::HypothesisViolated*>(&ex)) return 3;
    if (dynamic_cast<const gx::MismatchError*>(&ex)) return 4;
    if (dynamic_cast<const gx::DomainError*>(&ex)) return 4;
    if (dynamic_cast<const gx::InternalError*>(&ex)) return 1;
    if (dynamic_cast<const gx::Error*>(&ex)) return 2;
    return 1;
}

const char* classify_name(int code) {
    switch (code) {
        case 2: return "parse";
        case 3: return "hypothesis";
        case 4: return "mismatch";
        default: return "internal";
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Common {
    std::string format = "text";
    unsigned jobs = 1;
    int verbose = 0;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}))
        ->capture_default_str();
    sub->add_option("--jobs", c.jobs, "process input files in parallel")
        ->check(CLI::Range(1u, 64u));
    sub->add_flag("-v,--verbose", c.verbose, "more detail; -vv traces SNF steps");
}

// One processed input: a text block, a JSON fragment, and an exit code.
struct Piece {
    std::string text;
    json j = json::object();
    int code = 0;
};

void fill_error(Piece& out, const std::string& path, const std::exception& ex) {
    out.code = classify_exit(ex);
    out.text += std::string("error: ") + ex.what() + "\n";
    out.j["error"] = {{"exit_code", out.code},
                      {"type", classify_name(out.code)},
                      {"message", ex.what()}};
    (void)path;
}

// --- hypothesis reporting shared by ext/check ------------------------------

struct HypoReport {
    bool no_sinks = true;
    bool condition_l = true;
    std::string sink_line;
    std::string l_line;
};

HypoReport hypothesis_report(const gx::DirectedMultigraph& g) {
    HypoReport r;
    auto s = gx::sinks(g);
    if (s.empty()) {
        r.sink_line = "no sinks: ok";
    } else {
        r.no_sinks = false;
        std::string names;
        for (std::size_t i = 0; i < s.size() && i < 3; ++i)
            names += (i ? ", '" : "'") + g.vertex_id(s[i]) + "'";
        if (s.size() > 3) names += ", ...";
        r.sink_line = "no sinks: FAILS (" + names + ")";
    }
    if (auto w = gx::find_exitless_cycle_vertex(g)) {
        r.condition_l = false;
        r.l_line = "Condition (L) fails: the cycle through '" + g.vertex_id(*w) +
                   "' has no exit";
    } else {
        r.l_line = "Condition (L): ok";
    }
    return r;
}

json factors_json(const gx::CokernelPresentation& p) {
    json f = json::array();
    for (const auto& d : p.invariant_factors) f.push_back(gx::int_to_json(d));
    return f;
}

// --- ext --------------------------------------------------------------------

Piece run_ext(const std::string& path, const std::string& content, const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::DirectedMultigraph g = gx::parse_graph(content);
        if (c.format == "dot") {
            std::ostringstream os;
            gx::write_graph_dot(os, g);
            out.text = os.str();
            return out;
        }
        HypoReport hr = hypothesis_report(g);
        std::ostringstream trace_buf;
        gx::SnfTrace trace;
        if (c.verbose >= 2)
            trace = [&trace_buf](const std::string& line) { trace_buf << "  " << line << "\n"; };

        auto vp = gx::cokernel(gx::vertex_matrix(g).minus_identity(), trace);
        auto ep = gx::cokernel(gx::edge_matrix(g).minus_identity(), trace);
        const bool agree =
            vp.invariant_factors == ep.invariant_factors && vp.free_rank == ep.free_rank;

        std::ostringstream os;
        os << "vertices: " << g.vertex_count() << ", edges: " << g.edge_count() << "\n";
        os << hr.sink_line << "\n" << hr.l_line << "\n";
        if (c.verbose >= 2) os << "SNF steps:\n" << trace_buf.str();
        const bool hyp_ok = hr.no_sinks && hr.condition_l;
        if (hyp_ok) {
            os << "Ext group: " << vp.group_description() << "\n";
        } else {
            os << "cokernels computed anyway (Ext reading needs the hypotheses above):\n";
            os << "coker(A-I) = " << vp.group_description() << "\n";
            os << "coker(B-I) = " << ep.group_description() << "\n";
        }
        os << "invariant factors:";
        if (vp.invariant_factors.empty()) os << " none";
        for (const auto& d : vp.invariant_factors) os << " " << d;
        os << "\nfree rank: " << vp.free_rank << "\n";
        if (agree)
            os << "vertex and edge presentations agree\n";
        else
            os << "vertex and edge presentations DISAGREE (internal bug)\n";
        out.text = os.str();

        out.j["vertices"] = g.vertex_count();
        out.j["edges"] = g.edge_count();
        out.j["no_sinks"] = hr.no_sinks;
        out.j["condition_l"] = hr.condition_l;
        out.j["group"] = vp.group_description();
        out.j["invariant_factors"] = factors_json(vp);
        out.j["free_rank"] = vp.free_rank;
        out.j["presentations_agree"] = agree;

        if (!agree)
            out.code = 1;  // cannot happen unless the library is wrong
        else if (!hyp_ok)
            out.code = 3;
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- wojciech ---------------------------------------------------------------

Piece run_wojciech(const std::string& path, const std::string& content, const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::OneSinkExtension ext = gx::parse_extension(content);
        if (c.format == "dot") {
            std::ostringstream os;
            gx::write_extension_dot(os, ext);
            out.text = os.str();
            return out;
        }
        std::ostringstream os;
        os << "base: " << ext.base_vertex_count() << " vertices, " << ext.base_edge_count()
           << " edges; added: " << ext.added_vertices().size() << " vertices, "
           << ext.added_edges().size() << " edges; sink: " << ext.sink_id() << "\n";

        auto report = gx::validate(ext);
        json warn = json::array();
        bool blocked = false;
        for (std::size_t i = 0; i < report.details.size(); ++i)
            warn.push_back(report.details[i]);
        for (int cond : report.violated)
            if (cond != 1) blocked = true;
        for (const auto& d : report.details) os << "warning: " << d << "\n";
        out.j["validation_warnings"] = warn;
        if (blocked) {
            // Only condition-1 findings (the all-zeros corner) keep the
            // computation meaningful; anything else makes omega unreliable.
            out.code = 3;
            os << "error: extension violates the 1-sink conditions above\n";
            out.text = os.str();
            out.j["error"] = {{"exit_code", 3},
                              {"type", "hypothesis"},
                              {"message", "extension violates 1-sink conditions"}};
            return out;
        }

        gx::IntVector omega = gx::wojciech_vector(ext);
        const auto& base = ext.base();
        auto pres = gx::cokernel(gx::vertex_matrix(base).minus_identity());
        const bool zero = gx::solve_in_image(pres.snf, omega).has_value();
        const bool essential = gx::is_essential(ext);

        HypoReport hr = hypothesis_report(base);
        os << "wojciech vector: " << gx::format_vector(omega) << "\n";
        os << "class representative: " << gx::format_vector(omega) << " in coker(A-I) = "
           << pres.group_description() << "\n";
        os << "class is " << (zero ? "zero" : "nonzero") << "\n";
        os << "extension: " << (essential ? "essential" : "NOT essential") << "\n";
        if (!hr.no_sinks || !hr.condition_l)
            os << "note: base graph fails Ext hypotheses (" << (hr.no_sinks ? "" : "sinks; ")
               << (hr.condition_l ? "" : hr.l_line) << "), class reading is formal\n";
        out.text = os.str();

        out.j["wojciech_vector"] = gx::vector_to_json(omega);
        out.j["group"] = pres.group_description();
        out.j["class_is_zero"] = zero;
        out.j["essential"] = essential;
        out.j["base_no_sinks"] = hr.no_sinks;
        out.j["base_condition_l"] = hr.condition_l;
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- validate ----------------------------------------------------------------

Piece run_validate(const std::string& path, const std::string& content, const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::OneSinkExtension ext = gx::parse_extension(content);
        if (c.format == "dot") {
            std::ostringstream os;
            gx::write_extension_dot(os, ext);
            out.text = os.str();
            return out;
        }
        auto report = gx::validate(ext);
        std::ostringstream os;
        json findings = json::array();
        if (report.valid()) {
            os << "valid one-sink extension\n";
        } else {
            os << "INVALID: conditions violated:";
            for (int cond : report.violated) os << " " << cond;
            os << "\n";
            for (const auto& d : report.details) {
                os << "  " << d << "\n";
                findings.push_back(d);
            }
            out.code = 3;
        }
        const bool essential = gx::is_essential(ext);
        os << "essential: " << (essential ? "yes" : "no") << "\n";
        out.text = os.str();
        out.j["valid"] = report.valid();
        out.j["violated_conditions"] = report.violated;
        out.j["findings"] = findings;
        out.j["essential"] = essential;
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- check -------------------------------------------------------------------

Piece run_check(const std::string& path, const std::string& content, const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::DirectedMultigraph g = gx::parse_graph(content);
        if (c.format == "dot") {
            std::ostringstream os;
            gx::write_graph_dot(os, g);
            out.text = os.str();
            return out;
        }
        HypoReport hr = hypothesis_report(g);
        const bool transitive = gx::is_transitive(g);
        std::ostringstream os;
        os << "vertices: " << g.vertex_count() << ", edges: " << g.edge_count() << "\n";
        os << hr.sink_line << "\n" << hr.l_line << "\n";
        os << "transitive: " << (transitive ? "yes" : "no") << "\n";
        out.text = os.str();
        out.j["vertices"] = g.vertex_count();
        out.j["edges"] = g.edge_count();
        out.j["no_sinks"] = hr.no_sinks;
        out.j["condition_l"] = hr.condition_l;
        out.j["transitive"] = transitive;
        // transitivity is informational; the exit code mirrors the two Ext
        // hypotheses so `check` works as a pre-flight for `ext`
        if (!hr.no_sinks || !hr.condition_l) out.code = 3;
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- sum / essentialize ------------------------------------------------------

void emit_extension(const gx::OneSinkExtension& ext, const gx::IntVector& omega,
                    const std::string& out_path, const Common& c, std::ostringstream& os,
                    json& j) {
    if (c.format == "dot") {
        std::ostringstream dot;
        gx::write_extension_dot(dot, ext);
        if (out_path.empty()) {
            os << dot.str();
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw gx::Error("cannot write '" + out_path + "'");
            f << dot.str();
            os << "wrote " << out_path << "\n";
        }
        return;
    }
    j["extension"] = gx::extension_to_json(ext);
    std::ostringstream body;
    gx::write_extension_text(body, ext);
    body << "# wojciech vector: " << gx::format_vector(omega) << "\n";
    if (out_path.empty()) {
        os << body.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw gx::Error("cannot write '" + out_path + "'");
        f << body.str();
        os << "wrote " << out_path << "\n";
        j["written_to"] = out_path;
    }
}

Piece run_sum(const std::string& path_a, const std::string& content_a,
              const std::string& path_b, const std::string& content_b,
              const std::string& out_path, const Common& c) {
    Piece out;
    try {
        gx::OneSinkExtension a = gx::parse_extension(content_a);
        gx::OneSinkExtension b = gx::parse_extension(content_b);
        gx::OneSinkExtension s = gx::sum_extensions(a, b);
        gx::IntVector omega = gx::wojciech_vector(s);
        std::ostringstream os;
        // with --out the extension goes to a file and stdout gets the result
        // line; without it stdout IS the extension file (the trailing comment
        // in the body carries the vector), so keep it clean
        if (c.format == "text" && !out_path.empty())
            os << "wojciech vector of sum: " << gx::format_vector(omega) << "\n";
        emit_extension(s, omega, out_path, c, os, out.j);
        out.text = os.str();
        out.j["wojciech_vector"] = gx::vector_to_json(omega);
        out.j["inputs"] = {path_a, path_b};
    } catch (const std::exception& ex) {
        fill_error(out, path_a + ", " + path_b, ex);
    }
    return out;
}

Piece run_essentialize(const std::string& path, const std::string& content,
                       const std::string& vector_arg, const std::string& out_path,
                       const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::DirectedMultigraph g = gx::parse_graph(content);
        gx::IntVector x = gx::parse_int_vector(vector_arg);
        gx::OneSinkExtension ext = gx::essential_extension_for_class(g, x);
        gx::IntVector omega = gx::wojciech_vector(ext);

        // Re-check the certificate here; the library already asserts it, but
        // this command's whole point is printing the evidence.
        const bool positive = gx::all_positive(omega);
        const gx::IntMatrix a_minus_i = gx::vertex_matrix(g).minus_identity();
        const bool same_class = gx::coker_equal(a_minus_i, omega, x);
        const bool essential = gx::is_essential(ext);
        if (!positive || !same_class || !essential)
            throw gx::InternalError("essentialize certificate failed");

        std::ostringstream os;
        // '#' keeps bare stdout parseable as an extension file
        if (c.format == "text") {
            os << "# input class: " << gx::format_vector(x) << "\n";
            os << "# wojciech vector: " << gx::format_vector(omega) << "\n";
            os << "# certificate: all entries >= 1: yes; same class as input: yes; "
                  "essential: yes\n";
        }
        emit_extension(ext, omega, out_path, c, os, out.j);
        out.text = os.str();
        out.j["input_vector"] = gx::vector_to_json(x);
        out.j["wojciech_vector"] = gx::vector_to_json(omega);
        out.j["essential"] = true;
        out.j["same_class"] = true;
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- counterexample -----------------------------------------------------------

Piece run_counterexample(std::size_t m, const Common& c) {
    Piece out;
    try {
        gx::DirectedMultigraph g = gx::ladder_graph(m);
        if (c.format == "dot") {
            std::ostringstream os;
            gx::write_graph_dot(os, g);
            out.text = os.str();
            return out;
        }
        HypoReport hr = hypothesis_report(g);
        const bool transitive = gx::is_transitive(g);
        std::vector<bool> obstructed = gx::obstruction_check_all(m);
        bool all_hold = true;
        for (bool b : obstructed) all_hold = all_hold && b;

        std::ostringstream os;
        os << "ladder graph, m = " << m << ": " << g.vertex_count() << " vertices, "
           << g.edge_count() << " edges\n";
        os << "transitive: " << (transitive ? "yes" : "no") << "\n";
        os << hr.sink_line << "\n" << hr.l_line << "\n";
        json obs = json::array();
        for (std::size_t j = 1; j <= m; ++j) {
            const bool holds = obstructed[j - 1];
            if (c.verbose >= 1 || !holds)
                os << "delta_w" << j << ": "
                   << (holds ? "not in im(A-I)" : "IN im(A-I) (unexpected)") << "\n";
            obs.push_back({{"j", j}, {"in_image", !holds}});
        }
        if (all_hold)
            os << "all " << m << " obstruction(s) hold: no delta_wj lies in im(A-I)\n";
        else
            os << "SOME OBSTRUCTION FAILED; see above\n";
        out.text = os.str();
        out.j["m"] = m;
        out.j["transitive"] = transitive;
        out.j["no_sinks"] = hr.no_sinks;
        out.j["condition_l"] = hr.condition_l;
        out.j["obstructions"] = obs;
        out.j["all_hold"] = all_hold;
    } catch (const std::exception& ex) {
        fill_error(out, "counterexample", ex);
    }
    return out;
}

// --- snf -----------------------------------------------------------------------

Piece run_snf(const std::string& path, const std::string& content,
              const std::string& prefix_arg, const Common& c) {
    Piece out;
    out.j["path"] = path;
    try {
        gx::IntMatrix m = gx::parse_matrix(content);
        std::ostringstream trace_buf;
        gx::SnfTrace trace;
        if (c.verbose >= 2)
            trace = [&trace_buf](const std::string& line) { trace_buf << "  " << line << "\n"; };
        gx::SmithDecomposition d = gx::smith_normal_form(m, trace);
        if (!gx::verify_decomposition(m, d))
            throw gx::InternalError("U*M*V != S after decomposition");

        const std::string prefix = prefix_arg.empty() ? path : prefix_arg;
        for (const char* suffix : {".U", ".S", ".V"}) {
            std::ofstream f(prefix + suffix, std::ios::binary);
            if (!f) throw gx::Error("cannot write '" + prefix + suffix + "'");
            gx::write_matrix(f, suffix[1] == 'U' ? d.u : suffix[1] == 'S' ? d.s : d.v);
        }

        std::ostringstream os;
        os << "matrix: " << m.rows() << "x" << m.cols() << ", rank " << d.rank << "\n";
        if (c.verbose >= 2) os << "SNF steps:\n" << trace_buf.str();
        os << "diagonal:";
        for (const auto& e : d.diagonal()) os << " " << e;
        os << "\nverified U*M*V = S\n";
        os << "wrote " << prefix << ".U, " << prefix << ".S, " << prefix << ".V\n";
        out.text = os.str();

        json diag = json::array();
        for (const auto& e : d.diagonal()) diag.push_back(gx::int_to_json(e));
        out.j["rows"] = m.rows();
        out.j["cols"] = m.cols();
        out.j["rank"] = d.rank;
        out.j["diagonal"] = diag;
        out.j["u"] = gx::matrix_to_json(d.u);
        out.j["s"] = gx::matrix_to_json(d.s);
        out.j["v"] = gx::matrix_to_json(d.v);
        out.j["files"] = {prefix + ".U", prefix + ".S", prefix + ".V"};
    } catch (const std::exception& ex) {
        fill_error(out, path, ex);
    }
    return out;
}

// --- multi-file driver ----------------------------------------------------------

template <class Fn>
std::vector<Piece> run_over_files(const std::vector<std::string>& files,
                                  const std::vector<std::string>& contents, unsigned jobs,
                                  Fn&& fn) {
    std::vector<Piece> results(files.size());
    if (jobs <= 1 || files.size() <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i)
            results[i] = fn(files[i], contents[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= files.size()) return;
            results[i] = fn(files[i], contents[i]);
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(files.size()));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

json make_doc(const std::string& command, const std::vector<std::string>& paths,
              const std::vector<std::string>& contents) {
    json doc;
    doc["tool"] = "graphext";
    doc["format_version"] = 1;
    doc["command"] = command;
    doc["inputs"] = json::array();
    for (std::size_t i = 0; i < paths.size(); ++i)
        doc["inputs"].push_back(
            {{"path", paths[i]},
             {"hash", {{"algorithm", "fnv1a-64"}, {"digest", fnv1a_hex(contents[i])}}}});
    doc["results"] = json::array();
    return doc;
}

// Slurp all inputs up front; a missing file fails the whole run with exit 2.
bool slurp_all(const std::vector<std::string>& paths, std::vector<std::string>& contents) {
    contents.clear();
    for (const auto& p : paths) {
        try {
            contents.push_back(gx::slurp_file(p));
        } catch (const std::exception& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return false;
        }
    }
    return true;
}

int emit(const std::string& command, const std::vector<std::string>& paths,
         const std::vector<std::string>& contents, std::vector<Piece> results,
         const Common& c) {
    int code = 0;
    for (const auto& r : results) code = std::max(code, r.code);
    if (c.format == "json") {
        json doc = make_doc(command, paths, contents);
        for (auto& r : results) doc["results"].push_back(std::move(r.j));
        doc["exit_code"] = code;
        std::cout << doc.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results.size() > 1 && i < paths.size()) std::cout << "== " << paths[i] << "\n";
            std::cout << results[i].text;
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Ext-group and one-sink-extension calculator for directed multigraphs"};
    app.require_subcommand(1);

    Common c_ext, c_woj, c_sum, c_ess, c_ctr, c_snf, c_val, c_chk;
    std::vector<std::string> ext_files, woj_files, val_files, chk_files;
    std::string sum_a, sum_b, sum_out;
    std::string ess_graph, ess_vector, ess_out;
    std::string snf_file, snf_prefix;
    std::size_t ctr_m = 1;

    auto* s_ext = app.add_subcommand("ext", "Ext group of a graph via coker(A-I), coker(B-I)");
    s_ext->add_option("files", ext_files, "graph files")->required();
    add_common(s_ext, c_ext);

    auto* s_woj = app.add_subcommand("wojciech", "wojciech vector and class of an extension");
    s_woj->add_option("files", woj_files, "extension files")->required();
    add_common(s_woj, c_woj);

    auto* s_sum = app.add_subcommand("sum", "sum of two extensions over the same base");
    s_sum->add_option("a", sum_a, "first extension file")->required();
    s_sum->add_option("b", sum_b, "second extension file")->required();
    s_sum->add_option("--out", sum_out, "write the summed extension here");
    add_common(s_sum, c_sum);

    auto* s_ess = app.add_subcommand(
        "essentialize", "essential extension representing a given class");
    s_ess->add_option("graph", ess_graph, "graph file")->required();
    s_ess->add_option("--vector", ess_vector,
                      "comma-separated integers, graph vertex order")
        ->required();
    s_ess->add_option("--out", ess_out, "write the extension here");
    add_common(s_ess, c_ess);

    auto* s_ctr = app.add_subcommand("counterexample",
                                     "ladder-graph obstruction report (delta_wj vs im(A-I))");
    s_ctr->add_option("m", ctr_m, "ladder truncation length")->required()
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
    add_common(s_ctr, c_ctr);

    auto* s_snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    s_snf->add_option("matrix", snf_file, "matrix file")->required();
    s_snf->add_option("--out-prefix", snf_prefix, "prefix for .U/.S/.V (default: input path)");
    add_common(s_snf, c_snf);

    auto* s_val = app.add_subcommand("validate", "check the four 1-sink extension conditions");
    s_val->add_option("files", val_files, "extension files")->required();
    add_common(s_val, c_val);

    auto* s_chk = app.add_subcommand("check", "sinks / Condition (L) / transitivity report");
    s_chk->add_option("files", chk_files, "graph files")->required();
    add_common(s_chk, c_chk);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 2;
    }

    std::vector<std::string> contents;

    if (app.got_subcommand(s_ext)) {
        if (!slurp_all(ext_files, contents)) return 2;
        auto results = run_over_files(ext_files, contents, c_ext.jobs,
                                      [&](const std::string& p, const std::string& t) {
                                          return run_ext(p, t, c_ext);
                                      });
        return emit("ext", ext_files, contents, std::move(results), c_ext);
    }
    if (app.got_subcommand(s_woj)) {
        if (!slurp_all(woj_files, contents)) return 2;
        auto results = run_over_files(woj_files, contents, c_woj.jobs,
                                      [&](const std::string& p, const std::string& t) {
                                          return run_wojciech(p, t, c_woj);
                                      });
        return emit("wojciech", woj_files, contents, std::move(results), c_woj);
    }
    if (app.got_subcommand(s_val)) {
        if (!slurp_all(val_files, contents)) return 2;
        auto results = run_over_files(val_files, contents, c_val.jobs,
                                      [&](const std::string& p, const std::string& t) {
                                          return run_validate(p, t, c_val);
                                      });
        return emit("validate", val_files, contents, std::move(results), c_val);
    }
    if (app.got_subcommand(s_chk)) {
        if (!slurp_all(chk_files, contents)) return 2;
        auto results = run_over_files(chk_files, contents, c_chk.jobs,
                                      [&](const std::string& p, const std::string& t) {
                                          return run_check(p, t, c_chk);
                                      });
        return emit("check", chk_files, contents, std::move(results), c_chk);
    }
    if (app.got_subcommand(s_sum)) {
        std::vector<std::string> paths{sum_a, sum_b};
        if (!slurp_all(paths, contents)) return 2;
        std::vector<Piece> results;
        results.push_back(run_sum(sum_a, contents[0], sum_b, contents[1], sum_out, c_sum));
        return emit("sum", paths, contents, std::move(results), c_sum);
    }
    if (app.got_subcommand(s_ess)) {
        std::vector<std::string> paths{ess_graph};
        if (!slurp_all(paths, contents)) return 2;
        std::vector<Piece> results;
        results.push_back(run_essentialize(ess_graph, contents[0], ess_vector, ess_out, c_ess));
        return emit("essentialize", paths, contents, std::move(results), c_ess);
    }
    if (app.got_subcommand(s_ctr)) {
        std::vector<Piece> results;
        results.push_back(run_counterexample(ctr_m, c_ctr));
        return emit("counterexample", {}, {}, std::move(results), c_ctr);
    }
    if (app.got_subcommand(s_snf)) {
        if (c_snf.format == "dot") {
            std::cerr << "error: snf has no dot output\n";
            return 2;
        }
        std::vector<std::string> paths{snf_file};
        if (!slurp_all(paths, contents)) return 2;
        std::vector<Piece> results;
        results.push_back(run_snf(snf_file, contents[0], snf_prefix, c_snf));
        return emit("snf", paths, contents, std::move(results), c_snf);
    }
    return 2;  // unreachable: require_subcommand(1)
}
