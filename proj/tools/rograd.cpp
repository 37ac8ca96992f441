#include "rograd/central.hpp"
#include "rograd/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rograd;

namespace {

struct Common {
    std::string format = "table";
    std::string out;
    std::string ring = "Q";
    int max_rank = 8;
    int max_dim = 160;
};

struct Model {
    std::string name = "sl";
    int n = 3, p = 1, q = 2;
};

void add_common(CLI::App* c, Common& o, bool ring)
{
    c->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    c->add_option("--out", o.out, "write the result to this file");
    if (ring) c->add_option("--ring", o.ring, "Z, Q or Fp:<p>");
    c->add_option("--max-rank", o.max_rank, "largest rank accepted");
    c->add_option("--max-dim", o.max_dim, "largest algebra dimension accepted");
}

void add_model(CLI::App* c, Model& m)
{
    c->add_option("--model", m.name, "sl, tkk-rect, tkk-hermitian, tkk-octonion or tkk-albert")
        ->check(CLI::IsMember({"sl", "tkk-rect", "tkk-hermitian", "tkk-octonion", "tkk-albert"}));
    c->add_option("--n", m.n, "matrix size for sl and tkk-hermitian");
    c->add_option("--p", m.p, "rows of the rectangular pair");
    c->add_option("--q", m.q, "columns of the rectangular pair");
}

void emit(const Common& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
}

void emit(const Common& o, const json& j, const std::string& table)
{
    emit(o, o.format == "json" ? j.dump(2) + "\n" : table);
}

void check_rank(const Common& o, int r)
{
    if (r > o.max_rank)
        throw precondition_error("rank " + std::to_string(r) + " exceeds --max-rank " + std::to_string(o.max_rank));
}

void check_dim(const Common& o, int d)
{
    if (d > o.max_dim)
        throw precondition_error("dimension " + std::to_string(d) + " exceeds --max-dim " + std::to_string(o.max_dim));
}

// the algebra of a model together with its root system
struct Built {
    GradedLieAlgebra L;
    RootSystem R;
    json dims;
};

Built build(const Model& m, const Common& o)
{
    BaseRing K = BaseRing::parse(o.ring);
    Built b;
    if (m.name == "sl") {
        check_rank(o, m.n - 1);
        check_dim(o, m.n * m.n - 1);
        b.L = sl_algebra(m.n, matrix_algebra(1, K));
        b.R = build_root_system('A', m.n - 1);
        b.dims = {{"dim", b.L.dim}};
        return b;
    }
    JordanPair V;
    std::optional<JordanAlgebra> J;
    if (m.name == "tkk-rect") {
        if (m.p < 1 || m.q < 1) throw precondition_error("--p and --q must be positive");
        check_rank(o, m.p + m.q - 1);
        V = rectangular_pair(m.p, m.q, matrix_algebra(1, K));
        b.R = build_root_system('A', m.p + m.q - 1);
    } else if (m.name == "tkk-octonion") {
        V = rectangular_pair(1, 2, split_octonions(K));
        b.R = build_root_system('A', 2);
    } else if (m.name == "tkk-hermitian") {
        check_rank(o, m.n);
        J = hermitian_algebra(m.n, matrix_algebra(1, K));
        V = J->pair();
        b.R = build_root_system('C', m.n);
    } else {
        J = albert_algebra(K);
        V = J->pair();
        b.R = build_root_system('C', 3);
    }
    auto I = instr(V);
    check_dim(o, V.dim[0] + V.dim[1] + I.dim());
    b.L = tkk(V, I);
    b.dims = {{"dim", b.L.dim}, {"instr", I.dim()}, {"pair", V.dim[0]}};
    if (J) {
        b.dims[m.name == "tkk-albert" ? "albert" : "jordan"] = J->dim;
        if (K.invertible(2)) b.dims["ider"] = ider(*J).dim();
    }
    return b;
}

std::string dims_table(const json& j)
{
    std::ostringstream os;
    for (auto& [k, v] : j.items()) os << k << std::string(k.size() < 8 ? 8 - k.size() : 1, ' ') << v << "\n";
    return os.str();
}

int run_verify_cmd(const Common& o, const std::string& suite)
{
    auto res = run_verify(suite);
    long bad = 0;
    json j = json::array();
    std::ostringstream os;
    for (auto& r : res) {
        bad += r.violations;
        j.push_back({{"suite", r.suite},
                     {"subject", r.subject},
                     {"checks", r.checks},
                     {"violations", r.violations},
                     {"failures", r.failures},
                     {"seconds", r.seconds}});
        os << (r.violations ? "FAIL " : "ok   ") << r.suite << "  " << r.subject << "  checks " << r.checks
           << "  violations " << r.violations << "\n";
        for (auto& f : r.failures) os << "     " << f << "\n";
    }
    os << (bad ? "verify: " + std::to_string(bad) + " violations\n" : "verify: all checks passed\n");
    emit(o, j, os.str());
    return bad ? 1 : 0;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"rograd: root-graded Lie algebras, Jordan pairs and central extensions"};
    app.require_subcommand(1);

    Common o_deg, o_roots, o_uce, o_tkk, o_dims, o_ver;
    Model m_uce, m_tkk, m_dims;
    std::string type = "A";
    int rank = 2;
    std::string method = "both", suite = "all";

    auto root_types = CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}, CLI::ignore_case);
    auto* deg = app.add_subcommand("degsums", "degenerate sums of a root system");
    add_common(deg, o_deg, false);
    deg->add_option("--type", type, "A, B, C, D, E, F or G")->required()->check(root_types);
    deg->add_option("--rank", rank, "rank")->required();
    deg->add_option("--method", method, "algorithm, bruteforce or both")
        ->check(CLI::IsMember({"algorithm", "bruteforce", "both"}));

    auto* roots = app.add_subcommand("roots", "list a root system");
    add_common(roots, o_roots, false);
    roots->add_option("--type", type, "A, B, C, D, E, F or G")->required()->check(root_types);
    roots->add_option("--rank", rank, "rank")->required();

    auto* uc = app.add_subcommand("uce", "kernel of the universal central extension");
    add_common(uc, o_uce, true);
    add_model(uc, m_uce);

    auto* tk = app.add_subcommand("tkk", "structure report of a model algebra");
    add_common(tk, o_tkk, true);
    add_model(tk, m_tkk);

    auto* dm = app.add_subcommand("dims", "dimensions of a model algebra");
    add_common(dm, o_dims, true);
    add_model(dm, m_dims);

    auto* ver = app.add_subcommand("verify", "run the property suites");
    add_common(ver, o_ver, false);
    std::vector<std::string> names = verify_suites();
    names.push_back("all");
    ver->add_option("--suite", suite, "pairs, peirce, lie, cocycles, torsion or all")->check(CLI::IsMember(names));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*deg || *roots) {
            Common& o = *deg ? o_deg : o_roots;
            check_rank(o, rank);
            RootSystem R;
            try {
                R = build_root_system((char)std::toupper(type[0]), rank);
            } catch (const precondition_error& e) {
                std::cerr << "usage: " << e.what() << "\n";
                return 2;
            }
            if (*roots) {
                std::ostringstream os;
                os << R.name() << ": " << R.roots.size() << " roots\n";
                for (auto& a : R.roots) os << "  " << R.eps_str(a) << "\n";
                emit(o, R.to_json(), os.str());
                return 0;
            }
            DegenerateSumReport rep;
            if (method == "bruteforce") {
                rep = degenerate_sums_bruteforce(R);
            } else {
                rep = degenerate_sums_algorithm(R);
                if (method == "both" && !(rep == degenerate_sums_bruteforce(R))) {
                    std::cerr << "algorithm and brute force disagree on " << R.name() << "\n";
                    return 1;
                }
            }
            emit(o, degsums_json(R, rep), degsums_table(R, rep));
            return 0;
        }
        if (*uc) {
            auto b = build(m_uce, o_uce);
            auto rep = kernel_report(uce(b.L), b.R);
            emit(o_uce, rep.to_json(), rep.table());
            return rep.failures.empty() ? 0 : 1;
        }
        if (*tk) {
            auto b = build(m_tkk, o_tkk);
            auto c = check_lie(b.L);
            emit(o_tkk, b.L.to_json(), b.L.report());
            return c.ok() ? 0 : 1;
        }
        if (*dm) {
            auto b = build(m_dims, o_dims);
            emit(o_dims, b.dims, dims_table(b.dims));
            return 0;
        }
        return run_verify_cmd(o_ver, suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
