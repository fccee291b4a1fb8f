#include "jetvar/cli.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

#include "jetvar/bf.hpp"
#include "jetvar/eh.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/jacobi.hpp"
#include "jetvar/samples.hpp"
#include "jetvar/torus.hpp"
#include "jetvar/varcore.hpp"

namespace jv {

using json = nlohmann::json;

SpecError::SpecError(const std::string& msg, std::string ptr, int line_, int column_)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + msg
                                   : (ptr.empty() ? msg : ptr + ": " + msg)),
      pointer(std::move(ptr)),
      line(line_),
      column(column_) {}

int ProblemSpec::n_minus() const {
    return static_cast<int>(std::count(signature.begin(), signature.end(), -1));
}

namespace {

struct CatalogEntry {
    TaskInfo info;
    std::vector<std::string> params;
    double tol;  // default tolerance, 0 when the task has no numeric check
};

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = {
        {{"eh-regularity", "det of the E-H second-order Legendre block vs the closed-form identity at random metrics"},
         {"n", "count", "seed", "tol"}, 1e-9},
        {{"b-regularity", "symmetry defect and condition number of the E-H bilinear form b at random metrics"},
         {"n", "count", "seed", "tol"}, 1e-9},
        {{"momenta", "momenta and Hamiltonian from the generic pipeline; compared with closed forms for E-H"},
         {"n", "count", "seed", "tol"}, 1e-8},
        {{"bf-reproduction", "L_beta with beta_EH against L_EH at random order-2 metric jets"},
         {"n", "count", "seed", "tol"}, 1e-9},
        {{"helmholtz", "Helmholtz residuals of the Lagrangian's E-L operator along random sections"},
         {"n", "count", "seed", "tol"}, 1e-7},
        {{"projectability", "affine / J^2 / J^1 projectability verdict of the Lagrangian's Poincare-Cartan form"},
         {"count", "seed", "tol", "expect"}, 1e-8},
        {{"jacobi-poly", "exact homogeneous polynomial Jacobi fields of the flat E-H operator"},
         {"degree", "expect", "seed"}, 0},
        {{"mode-solve", "nullspace of the flat E-H operator on Fourier modes of the 4-torus"},
         {"k", "count", "range", "seed", "check"}, 0},
        {{"presymplectic-table", "presymplectic pairings of the torus basis fields, antisymmetry and closedness"},
         {"count", "range", "seed", "convention", "compare"}, 0},
        {{"cohomology-classes", "constant-mode classes of the pairings against the tabulated classes"},
         {"count", "range", "seed", "convention", "check"}, 0},
        {{"radical-probe", "truncated radical of the pairing at a mode and regularity of the Upsilon block"},
         {"k", "seed"}, 0},
    };
    return c;
}

const CatalogEntry* find_task(const std::string& name) {
    for (const auto& e : catalog())
        if (e.info.name == name) return &e;
    return nullptr;
}

std::string fmt_double(double v) {
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
}

std::string fmt_short(double v) {
    std::ostringstream o;
    o << std::setprecision(6) << v;
    return o.str();
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
        if (c == '"') o += '"';
        o += c;
    }
    return o + "\"";
}

// ---------------------------------------------------------------- parsing

void line_col(const std::string& text, std::size_t byte, int& line, int& col) {
    line = 1;
    col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
}

std::string param_text(const json& v, const std::string& ptr) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return fmt_double(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        // [[1,2,0,0],[0,1,0,0]] or [1,2,0,0] for modes
        std::string out;
        bool nested = !v.empty() && v[0].is_array();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (nested) {
                if (i) out += ";";
                out += param_text(v[i], ptr + "/" + std::to_string(i));
            } else {
                if (i) out += ",";
                out += param_text(v[i], ptr + "/" + std::to_string(i));
            }
        }
        return out;
    }
    throw SpecError("unsupported parameter value", ptr);
}

}  // namespace

void validate_task(const TaskRequest& t, const std::string& ptr) {
    const CatalogEntry* e = find_task(t.name);
    if (!e) throw SpecError("unknown task '" + t.name + "'", ptr);
    for (const auto& [k, v] : t.params)
        if (std::find(e->params.begin(), e->params.end(), k) == e->params.end())
            throw SpecError("task " + t.name + " has no parameter '" + k + "'", ptr + "/" + k);
}

namespace {

int expect_int(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) throw SpecError("integer expected", ptr);
    return v.get<int>();
}

}  // namespace

TaskRequest parse_task_line(const std::string& line) {
    std::istringstream in(line);
    TaskRequest t;
    if (!(in >> t.name)) throw SpecError("empty task", "");
    std::string kv;
    while (in >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw SpecError("expected key=value, got '" + kv + "'", "");
        t.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return t;
}

ProblemSpec parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        int line, col;
        line_col(text, e.byte > 0 ? e.byte - 1 : 0, line, col);
        std::string msg = e.what();
        auto p = msg.find("syntax error");
        throw SpecError(p == std::string::npos ? msg : msg.substr(p), "", line, col);
    }
    if (!doc.is_object()) throw SpecError("top level must be an object", "");
    static const std::set<std::string> known = {"seed", "dimension", "signature", "lagrangian", "samples", "tolerances", "tasks"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key())) throw SpecError("unknown field", "/" + it.key());

    ProblemSpec s;
    if (doc.contains("seed")) {
        const auto& v = doc["seed"];
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            throw SpecError("non-negative integer expected", "/seed");
        s.seed = v.get<std::uint64_t>();
    }
    if (doc.contains("dimension")) {
        s.dimension = expect_int(doc["dimension"], "/dimension");
        if (s.dimension < 2 || s.dimension > 6) throw SpecError("dimension must be in 2..6", "/dimension");
    }
    if (doc.contains("signature")) {
        const auto& v = doc["signature"];
        if (!v.is_array()) throw SpecError("array of +1/-1 expected", "/signature");
        for (std::size_t i = 0; i < v.size(); ++i) {
            int e = expect_int(v[i], "/signature/" + std::to_string(i));
            if (e != 1 && e != -1) throw SpecError("entries must be +1 or -1", "/signature/" + std::to_string(i));
            s.signature.push_back(e);
        }
        if ((int)s.signature.size() != s.dimension)
            throw SpecError("length " + std::to_string(s.signature.size()) + " does not match dimension " + std::to_string(s.dimension),
                            "/signature");
    } else {
        s.signature.assign(s.dimension, 1);
        s.signature[0] = -1;
    }

    int m = sym2_count(s.dimension);
    if (doc.contains("lagrangian")) {
        const auto& L = doc["lagrangian"];
        if (!L.is_object() || !L.contains("kind") || !L["kind"].is_string())
            throw SpecError("object with a string 'kind' expected", "/lagrangian");
        std::string kind = L["kind"];
        if (kind == "einstein_hilbert") {
            s.kind = ProblemSpec::LagrangianKind::EinsteinHilbert;
        } else if (kind == "bf") {
            s.kind = ProblemSpec::LagrangianKind::BF;
            if (!L.contains("beta") || !L["beta"].is_object()) throw SpecError("object of \"k,l,j,i\": expression expected", "/lagrangian/beta");
            for (auto it = L["beta"].begin(); it != L["beta"].end(); ++it) {
                if (!it.value().is_string()) throw SpecError("expression string expected", "/lagrangian/beta/" + it.key());
                s.beta.push_back({it.key(), it.value().get<std::string>()});
            }
            try {
                BetaForm::table(s.dimension, s.beta);
            } catch (const std::exception& e) {
                throw SpecError(e.what(), "/lagrangian/beta");
            }
        } else if (kind == "user") {
            s.kind = ProblemSpec::LagrangianKind::User;
            if (!L.contains("expression") || !L["expression"].is_string())
                throw SpecError("expression string expected", "/lagrangian/expression");
            if (!L.contains("fibre")) throw SpecError("fibre dimension required", "/lagrangian/fibre");
            s.fibre = expect_int(L["fibre"], "/lagrangian/fibre");
            if (s.fibre < 1 || s.fibre > 10) throw SpecError("fibre dimension must be in 1..10", "/lagrangian/fibre");
            s.expression = L["expression"];
            m = s.fibre;
            try {
                ExprJetFunction::parse(s.expression, s.dimension, s.fibre, 2);
            } catch (const std::exception& e) {
                throw SpecError(e.what(), "/lagrangian/expression");
            }
        } else {
            throw SpecError("kind must be einstein_hilbert, bf or user", "/lagrangian/kind");
        }
    }

    if (doc.contains("samples")) {
        const auto& S = doc["samples"];
        if (!S.is_object()) throw SpecError("object expected", "/samples");
        if (S.contains("count")) {
            s.sample_count = expect_int(S["count"], "/samples/count");
            if (s.sample_count < 1) throw SpecError("count must be positive", "/samples/count");
        }
        if (S.contains("jets")) {
            const auto& J = S["jets"];
            if (!J.is_array()) throw SpecError("array of coordinate arrays expected", "/samples/jets");
            int want = jet_coord_count(s.dimension, m, 2);
            for (std::size_t i = 0; i < J.size(); ++i) {
                std::string p = "/samples/jets/" + std::to_string(i);
                if (!J[i].is_array() || (int)J[i].size() != want)
                    throw SpecError("order-2 jet with " + std::to_string(want) + " coordinates expected", p);
                std::vector<double> c;
                for (std::size_t k = 0; k < J[i].size(); ++k) {
                    if (!J[i][k].is_number()) throw SpecError("number expected", p + "/" + std::to_string(k));
                    c.push_back(J[i][k].get<double>());
                }
                s.jets.push_back(c);
            }
        }
    }

    if (doc.contains("tolerances")) {
        const auto& T = doc["tolerances"];
        if (!T.is_object()) throw SpecError("object of task: tolerance expected", "/tolerances");
        for (auto it = T.begin(); it != T.end(); ++it) {
            if (!find_task(it.key())) throw SpecError("unknown task", "/tolerances/" + it.key());
            if (!it.value().is_number() || it.value().get<double>() <= 0)
                throw SpecError("positive number expected", "/tolerances/" + it.key());
            s.tolerances[it.key()] = it.value().get<double>();
        }
    }

    if (doc.contains("tasks")) {
        const auto& T = doc["tasks"];
        if (!T.is_array()) throw SpecError("array expected", "/tasks");
        for (std::size_t i = 0; i < T.size(); ++i) {
            std::string p = "/tasks/" + std::to_string(i);
            TaskRequest t;
            if (T[i].is_string()) {
                try {
                    t = parse_task_line(T[i].get<std::string>());
                } catch (const SpecError& e) {
                    throw SpecError(e.what(), p);
                }
                validate_task(t, p);
            } else if (T[i].is_object()) {
                if (!T[i].contains("name") || !T[i]["name"].is_string()) throw SpecError("task name expected", p + "/name");
                t.name = T[i]["name"];
                for (auto it = T[i].begin(); it != T[i].end(); ++it)
                    if (it.key() != "name") t.params[it.key()] = param_text(it.value(), p + "/" + it.key());
                validate_task(t, p);
            } else {
                throw SpecError("task string or object expected", p);
            }
            s.tasks.push_back(t);
        }
    }
    return s;
}

const std::vector<TaskInfo>& list_tasks() {
    static const std::vector<TaskInfo> t = [] {
        std::vector<TaskInfo> v;
        for (const auto& e : catalog()) v.push_back(e.info);
        return v;
    }();
    return t;
}

std::string CsvTable::render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + csv_quote(header[i]);
    out += "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + csv_quote(r[i]);
        out += "\n";
    }
    return out;
}

bool Report::ok() const {
    return std::all_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.passed; });
}

std::string Report::render() const {
    std::ostringstream o;
    o << "# jetvar report\n";
    o << "seed: " << seed << "\n";
    o << "tasks: " << tasks.size() << "\n";
    int passed = 0, failed = 0, info = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& t = tasks[i];
        o << "\n== " << i + 1 << " " << t.name << "\n";
        o << "seed: " << t.seed << "\n";
        for (const auto& [k, v] : t.lines) o << k << ": " << v << "\n";
        for (const auto& tab : t.tables) o << "table: " << i + 1 << "-" << tab.name << ".csv (" << tab.rows.size() << " rows)\n";
        std::string status;
        if (!t.error.empty()) status = "error: " + t.error;
        else if (!t.checked) status = "info";
        else status = t.passed ? "pass" : "fail";
        o << "status: " << status << "\n";
        if (!t.passed) ++failed;
        else if (t.checked) ++passed;
        else ++info;
    }
    o << "\n== summary\n";
    o << "passed: " << passed << "\nfailed: " << failed << "\ninfo: " << info << "\n";
    o << "\n== csv schemas\n";
    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (const auto& tab : tasks[i].tables) {
            o << i + 1 << "-" << tab.name << ".csv: ";
            for (std::size_t c = 0; c < tab.header.size(); ++c) o << (c ? "," : "") << tab.header[c];
            o << "\n  " << tab.schema << "\n";
        }
    return o.str();
}

std::map<std::string, std::string> Report::csv_files() const {
    std::map<std::string, std::string> out;
    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (const auto& tab : tasks[i].tables) out[std::to_string(i + 1) + "-" + tab.name + ".csv"] = tab.render();
    return out;
}

std::uint64_t task_seed(std::uint64_t run_seed, std::size_t index) {
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// ---------------------------------------------------------------- task plumbing

struct Ctx {
    const ProblemSpec& spec;
    const TaskRequest& req;
    std::string ptr;
    std::uint64_t seed;
    double tol;
    std::mt19937_64 rng;

    std::string str(const std::string& k, const std::string& def) const {
        auto it = req.params.find(k);
        return it == req.params.end() ? def : it->second;
    }
    bool has(const std::string& k) const { return req.params.count(k) > 0; }
    long long integer(const std::string& k, long long def, long long lo, long long hi) const {
        auto it = req.params.find(k);
        if (it == req.params.end()) return def;
        std::size_t used = 0;
        long long v;
        try {
            v = std::stoll(it->second, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != it->second.size() || used == 0) throw SpecError("integer expected, got '" + it->second + "'", ptr + "/" + k);
        if (v < lo || v > hi)
            throw SpecError("value " + it->second + " outside " + std::to_string(lo) + ".." + std::to_string(hi), ptr + "/" + k);
        return v;
    }
    int n() const { return static_cast<int>(integer("n", spec.dimension, 2, 6)); }
    int count() const { return static_cast<int>(integer("count", spec.sample_count, 1, 100000)); }
    std::vector<int> signature(int n) const {
        if (n == spec.dimension) return spec.signature;
        std::vector<int> e(n, 1);
        e[0] = spec.n_minus() > 0 ? -1 : 1;
        return e;
    }
    int n_minus(int n) const {
        auto e = signature(n);
        return static_cast<int>(std::count(e.begin(), e.end(), -1));
    }
    BasisConvention convention() const {
        std::string c = str("convention", "nullspace");
        if (c == "nullspace") return BasisConvention::Nullspace;
        if (c == "tabulated") return BasisConvention::Tabulated;
        throw SpecError("convention must be nullspace or tabulated", ptr + "/convention");
    }
    bool flag(const std::string& k, const std::string& on) const {
        if (!has(k)) return false;
        std::string v = str(k, "");
        if (v == on || v == "true") return true;
        if (v == "false" || v == "none") return false;
        throw SpecError("expected '" + on + "'", ptr + "/" + k);
    }
    std::vector<Mode> modes() const {
        std::vector<Mode> out;
        std::string text = str("k", "");
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            Mode k{};
            std::stringstream is(item);
            std::string c;
            int i = 0;
            while (std::getline(is, c, ',')) {
                if (i >= 4) throw SpecError("mode with 4 components expected", ptr + "/k");
                try {
                    k[i++] = std::stoi(c);
                } catch (const std::exception&) {
                    throw SpecError("integer mode component expected, got '" + c + "'", ptr + "/k");
                }
            }
            if (i != 4) throw SpecError("mode with 4 components expected", ptr + "/k");
            out.push_back(k);
        }
        return out;
    }
};

using AnyLagrangian = std::variant<EHLagrangian, BFLagrangian, ExprJetFunction>;

AnyLagrangian make_lagrangian(const ProblemSpec& s) {
    switch (s.kind) {
        case ProblemSpec::LagrangianKind::EinsteinHilbert: return EHLagrangian(s.dimension);
        case ProblemSpec::LagrangianKind::BF: return BFLagrangian(BetaForm::table(s.dimension, s.beta));
        case ProblemSpec::LagrangianKind::User: return ExprJetFunction::parse(s.expression, s.dimension, s.fibre, 2);
    }
    return EHLagrangian(s.dimension);
}

const char* lagrangian_name(const ProblemSpec& s) {
    switch (s.kind) {
        case ProblemSpec::LagrangianKind::EinsteinHilbert: return "einstein_hilbert";
        case ProblemSpec::LagrangianKind::BF: return "bf";
        case ProblemSpec::LagrangianKind::User: return "user";
    }
    return "";
}

bool metric_bundle(const ProblemSpec& s) { return s.kind != ProblemSpec::LagrangianKind::User; }

// Explicit jets from the document, else random ones for the Lagrangian's bundle.
std::vector<JetPoint> sample_jets(Ctx& c, int order) {
    const auto& s = c.spec;
    int n = s.dimension, m = metric_bundle(s) ? sym2_count(n) : s.fibre;
    std::vector<JetPoint> out;
    if (!s.jets.empty()) {
        for (const auto& v : s.jets) {
            JetPoint p(n, m, 2);
            for (int k = 0; k < p.size(); ++k) p.coord(k) = v[k];
            out.push_back(order <= 2 ? p.truncated(order) : p);
        }
        return out;
    }
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < c.count(); ++t) {
        if (metric_bundle(s)) {
            out.push_back(random_metric_jet(n, s.n_minus(), order, c.rng, 0.5));
        } else {
            JetPoint p(n, m, order);
            for (int k = 0; k < p.size(); ++k) p.coord(k) = U(c.rng);
            out.push_back(p);
        }
    }
    return out;
}

std::string jet_source(const Ctx& c) { return c.spec.jets.empty() ? "random" : "explicit"; }

double rel(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300}); }

// ---------------------------------------------------------------- tasks

void task_eh_regularity(Ctx& c, TaskResult& r) {
    int n = c.n(), count = c.count(), nm = c.n_minus(n);
    CsvTable t{"eh_regularity", "one row per random metric: det of the (ij),(rs) block, identity value, relative error",
               {"sample", "det_g", "det", "identity", "rel_error"}, {}};
    double worst = 0, worst_printed = 0;
    for (int s = 0; s < count; ++s) {
        JetPoint p = random_metric_jet(n, nm, 0, c.rng);
        auto md = metric_data(p);
        double d = regularity_determinant(p), want = regularity_identity(n, md.det);
        double e = rel(d, want);
        worst = std::max(worst, e);
        worst_printed = std::max(worst_printed, rel(d, regularity_identity_printed(n, md.rho)));
        t.rows.push_back({std::to_string(s), fmt_double(md.det), fmt_double(d), fmt_double(want), fmt_double(e)});
    }
    r.lines = {{"n", std::to_string(n)},
               {"signature minus", std::to_string(nm)},
               {"count", std::to_string(count)},
               {"identity", "-(n-1) rho^(n(n+1)/2) (det g)^-(n+1)"},
               {"max rel error", fmt_short(worst)},
               {"max rel error of the printed exponent (n+1)(n+4)/2", fmt_short(worst_printed)},
               {"tolerance", fmt_short(c.tol)}};
    r.checked = true;
    r.passed = worst <= c.tol;
    r.tables.push_back(std::move(t));
}

void task_b_regularity(Ctx& c, TaskResult& r) {
    int n = c.n(), count = c.count(), nm = c.n_minus(n);
    int N = sym2_count(n) * n;
    CsvTable t{"b_regularity", "one row per random metric: symmetry defect of b relative to max |b|, condition number",
               {"sample", "symmetry_defect", "condition_number"}, {}};
    double worst = 0, cmax = 0;
    for (int s = 0; s < count; ++s) {
        JetPoint p = random_metric_jet(n, nm, 1, c.rng, 0.5);
        auto Y = eh_Y_matrix(p);
        double sc = 0, sy = 0;
        for (int i = 0; i < N * N; ++i) sc = std::max(sc, std::fabs(Y[i]));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) sy = std::max(sy, std::fabs(Y[i * N + j] - Y[j * N + i]));
        Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(Y.data(), N, N);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        auto sv = svd.singularValues();
        double cond = sv(N - 1) > 0 ? sv(0) / sv(N - 1) : INFINITY;
        worst = std::max(worst, sy / sc);
        cmax = std::max(cmax, cond);
        t.rows.push_back({std::to_string(s), fmt_double(sy / sc), fmt_double(cond)});
    }
    r.lines = {{"n", std::to_string(n)},
               {"count", std::to_string(count)},
               {"max symmetry defect", fmt_short(worst)},
               {"max condition number", fmt_short(cmax)},
               {"tolerance", fmt_short(c.tol)}};
    r.checked = true;
    r.passed = worst <= c.tol && std::isfinite(cmax);
    r.tables.push_back(std::move(t));
}

void task_momenta(Ctx& c, TaskResult& r) {
    auto lag = make_lagrangian(c.spec);
    auto jets = sample_jets(c, 1);
    bool eh = c.spec.kind == ProblemSpec::LagrangianKind::EinsteinHilbert;
    CsvTable t{"momenta", "one row per sample and momentum component a*n+i: generic value (and closed form for E-H)",
               {"sample", "component", "generic", "closed"}, {}};
    CsvTable h{"hamiltonian", "one row per sample: generic H, closed form and Christoffel form (E-H only)",
               {"sample", "generic", "closed", "christoffel"}, {}};
    double ep = 0, eH = 0, eC = 0;
    for (std::size_t s = 0; s < jets.size(); ++s) {
        auto mh = std::visit([&](const auto& L) { return momenta_hamiltonian(L, jets[s]); }, lag);
        EHCoefficients co;
        double hc = 0, hx = 0;
        if (eh) {
            co = eh_coefficients(jets[s]);
            hc = eh_H_closed(jets[s]);
            hx = eh_H_christoffel(jets[s]);
            double sc = 0;
            for (double v : co.p) sc = std::max(sc, std::fabs(v));
            for (std::size_t k = 0; k < mh.p.size(); ++k) ep = std::max(ep, std::fabs(mh.p[k] - co.p[k]) / std::max(sc, 1e-300));
            eH = std::max(eH, rel(mh.H, hc));
            eC = std::max(eC, rel(hx, hc));
        }
        for (std::size_t k = 0; k < mh.p.size(); ++k)
            t.rows.push_back({std::to_string(s), std::to_string(k), fmt_double(mh.p[k]), eh ? fmt_double(co.p[k]) : ""});
        h.rows.push_back({std::to_string(s), fmt_double(mh.H), eh ? fmt_double(hc) : "", eh ? fmt_double(hx) : ""});
    }
    r.lines = {{"lagrangian", lagrangian_name(c.spec)}, {"samples", std::to_string(jets.size()) + " " + jet_source(c)}};
    if (eh) {
        double tol_c = std::min(c.tol, 1e-9);
        r.lines.push_back({"max rel error p", fmt_short(ep)});
        r.lines.push_back({"max rel error H", fmt_short(eH)});
        r.lines.push_back({"max rel error H (Christoffel form)", fmt_short(eC)});
        r.lines.push_back({"tolerance", fmt_short(c.tol) + " (Christoffel form " + fmt_short(tol_c) + ")"});
        r.checked = true;
        r.passed = ep <= c.tol && eH <= c.tol && eC <= tol_c;
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(h));
}

void task_bf_reproduction(Ctx& c, TaskResult& r) {
    int n = c.n(), count = c.count(), nm = c.n_minus(n);
    auto beta = BetaForm::eh(n);
    EHLagrangian L(n);
    CsvTable t{"bf_reproduction", "one row per random order-2 metric jet: L_beta(beta_EH), L_EH, relative difference",
               {"sample", "l_beta", "l_eh", "rel_error"}, {}};
    double worst = 0;
    for (int s = 0; s < count; ++s) {
        JetPoint p = random_metric_jet(n, nm, 2, c.rng, 0.5);
        double a = l_beta(beta, p), b = L(p), e = rel(a, b);
        worst = std::max(worst, e);
        t.rows.push_back({std::to_string(s), fmt_double(a), fmt_double(b), fmt_double(e)});
    }
    r.lines = {{"n", std::to_string(n)}, {"count", std::to_string(count)}, {"max rel error", fmt_short(worst)}, {"tolerance", fmt_short(c.tol)}};
    r.checked = true;
    r.passed = worst <= c.tol;
    r.tables.push_back(std::move(t));
}

void task_helmholtz(Ctx& c, TaskResult& r) {
    auto lag = make_lagrangian(c.spec);
    const auto& s = c.spec;
    int n = s.dimension, count = c.count();
    std::uniform_real_distribution<double> U(-0.3, 0.3);
    CsvTable t{"helmholtz", "one row per random section: residuals of the three Helmholtz families at a random point",
               {"sample", "a", "b", "c"}, {}};
    double worst = 0;
    for (int k = 0; k < count; ++k) {
        PolySection sec = metric_bundle(s) ? random_metric_section(n, s.n_minus(), 3, 0.1, c.rng)
                                           : random_poly_section(n, std::vector<double>(s.fibre, 0.0), 3, 0.3, c.rng);
        std::vector<double> x(n);
        for (auto& v : x) v = U(c.rng);
        auto h = std::visit([&](const auto& L) { return helmholtz_residuals(L, sec, x); }, lag);
        worst = std::max(worst, h.max());
        t.rows.push_back({std::to_string(k), fmt_double(h.a), fmt_double(h.b), fmt_double(h.c)});
    }
    r.lines = {{"lagrangian", lagrangian_name(s)}, {"n", std::to_string(n)}, {"count", std::to_string(count)}, {"max residual", fmt_short(worst)}, {"tolerance", fmt_short(c.tol)}};
    r.checked = true;
    r.passed = worst <= c.tol;
    r.tables.push_back(std::move(t));
}

void task_projectability(Ctx& c, TaskResult& r) {
    auto lag = make_lagrangian(c.spec);
    auto jets = sample_jets(c, 2);
    auto rep = std::visit([&](const auto& L) { return projectability_check(L, jets, c.tol); }, lag);
    std::string verdict = !rep.affine ? "non-affine" : rep.projects_to_J1 ? "J1" : rep.projects_to_J2 ? "J2" : "affine";
    r.lines = {{"lagrangian", lagrangian_name(c.spec)},
               {"samples", std::to_string(jets.size()) + " " + jet_source(c)},
               {"affine", rep.affine ? "yes" : "no"},
               {"projects to J2", rep.projects_to_J2 ? "yes" : "no"},
               {"projects to J1", rep.projects_to_J1 ? "yes" : "no"},
               {"affine residual", fmt_short(rep.affine_residual)},
               {"J2 residual", fmt_short(rep.j2_residual)},
               {"J1 residual", fmt_short(rep.j1_residual)},
               {"verdict", verdict}};
    r.tables.push_back({"projectability", "single row: verdict flags and the largest residual of each test",
                        {"affine", "projects_to_J2", "projects_to_J1", "affine_residual", "j2_residual", "j1_residual"},
                        {{rep.affine ? "1" : "0", rep.projects_to_J2 ? "1" : "0", rep.projects_to_J1 ? "1" : "0",
                          fmt_double(rep.affine_residual), fmt_double(rep.j2_residual), fmt_double(rep.j1_residual)}}});
    if (c.has("expect")) {
        std::string want = c.str("expect", "");
        static const std::set<std::string> ok = {"non-affine", "affine", "J2", "J1"};
        if (!ok.count(want)) throw SpecError("expect must be one of non-affine, affine, J2, J1", c.ptr + "/expect");
        r.lines.push_back({"expected", want});
        r.checked = true;
        r.passed = want == verdict;
    }
}

std::string monomial_str(const std::vector<int>& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

void task_jacobi_poly(Ctx& c, TaskResult& r) {
    int degree = static_cast<int>(c.integer("degree", 2, 0, 4));
    auto op = flat_operator_matrix(c.spec.signature);
    auto sp = polynomial_solution_space(op, degree);
    CsvTable t{"jacobi_basis", "one row per nonzero coefficient: basis element, monomial in x1..xn, field index E<A> (sym2 order), exact coefficient",
               {"basis", "monomial", "field", "coefficient"}, {}};
    for (std::size_t b = 0; b < sp.basis.size(); ++b) {
        const auto& U = sp.basis[b];
        int M = static_cast<int>(U.monos.size());
        for (int A = 0; A < U.N; ++A)
            for (int k = 0; k < M; ++k) {
                const Q& q = U.c[A * M + k];
                if (q == 0) continue;
                t.rows.push_back({std::to_string(b + 1), monomial_str(U.monos[k]), "E" + std::to_string(A + 1), qstr(q)});
            }
    }
    std::string sig;
    for (int e : c.spec.signature) sig += e < 0 ? "-" : "+";
    r.lines = {{"signature", sig},
               {"degree", std::to_string(degree)},
               {"unknowns", std::to_string(sp.unknowns)},
               {"constraint rank", std::to_string(sp.constraints_rank)},
               {"dimension", std::to_string(sp.dimension)}};
    if (c.has("expect")) {
        long long want = c.integer("expect", 0, 0, 1 << 30);
        r.lines.push_back({"expected", std::to_string(want)});
        r.checked = true;
        r.passed = want == sp.dimension;
    }
    r.tables.push_back(std::move(t));
}

std::vector<Mode> task_modes(Ctx& c, int default_count) {
    if (c.has("k")) return c.modes();
    int count = static_cast<int>(c.integer("count", default_count, 1, 100000));
    int range = static_cast<int>(c.integer("range", 3, 1, 20));
    std::uniform_int_distribution<int> d(-range, range);
    std::vector<Mode> out;
    for (int t = 0; t < count; ++t) out.push_back({d(c.rng), d(c.rng), d(c.rng), d(c.rng)});
    return out;
}

void task_mode_solve(Ctx& c, TaskResult& r) {
    auto ks = task_modes(c, 20);
    bool check = c.flag("check", "printed");
    CsvTable t{"modes", "one row per mode: k, classification case, nullspace dimension, dimension of the tabulated classification",
               {"k1", "k2", "k3", "k4", "class", "dimension", "tabulated"}, {}};
    CsvTable b{"mode_basis", "one row per nullspace vector: k, index, amplitudes on E1..E10",
               {"k1", "k2", "k3", "k4", "index", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10"}, {}};
    static const int tabulated[4] = {1, 1, 3, 4};
    std::map<std::string, std::set<int>> dims;
    int agree = 0;
    for (const auto& k : ks) {
        auto s = mode_solve(k);
        bool zero = k == Mode{0, 0, 0, 0};
        int want = zero ? 10 : tabulated[static_cast<int>(s.cls)];
        agree += s.dimension == want;
        dims[zero ? "k=0" : mode_class_name(s.cls)].insert(s.dimension);
        std::vector<std::string> row = {std::to_string(k[0]), std::to_string(k[1]), std::to_string(k[2]), std::to_string(k[3]),
                                        zero ? "k=0" : mode_class_name(s.cls), std::to_string(s.dimension), std::to_string(want)};
        t.rows.push_back(row);
        for (std::size_t v = 0; v < s.basis.size(); ++v) {
            std::vector<std::string> br(row.begin(), row.begin() + 4);
            br.push_back(std::to_string(v + 1));
            for (const auto& q : s.basis[v]) br.push_back(qstr(q));
            b.rows.push_back(br);
        }
    }
    r.lines = {{"modes", std::to_string(ks.size())}};
    for (const auto& [cls, ds] : dims) {
        std::string v;
        for (int d : ds) v += (v.empty() ? "" : ",") + std::to_string(d);
        r.lines.push_back({"dimension " + cls, v});
    }
    r.lines.push_back({"agree with tabulated classification", std::to_string(agree) + "/" + std::to_string(ks.size())});
    if (check) {
        r.checked = true;
        r.passed = agree == static_cast<int>(ks.size());
    }
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(b));
}

void task_presymplectic_table(Ctx& c, TaskResult& r) {
    auto conv = c.convention();
    int per = static_cast<int>(c.integer("count", 3, 1, 1000));
    int range = static_cast<int>(c.integer("range", 4, 1, 20));
    bool compare = c.flag("compare", "printed");
    CsvTable t{"pairings", "one row per (pair, component, total mode): basis indices h1, h2, their modes, component i (1-based), mode of exp(i m.x), coefficient",
               {"h1", "k", "h2", "l", "i", "mode", "re", "im"}, {}};
    int pairs = 0, anti = 0, closed = 0;
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= 8; ++b)
            for (int s = 0; s < per; ++s) {
                auto X = basis_field(a, random_admissible_mode(a, conv, c.rng, range), conv);
                auto Y = basis_field(b, random_admissible_mode(b, conv, c.rng, range), conv);
                auto w = presymplectic_pair(X, Y);
                ++pairs;
                anti += is_negation(w, presymplectic_pair(Y, X));
                closed += is_closed(w);
                for (const auto& [m, v] : w.terms)
                    for (int i = 0; i < 4; ++i) {
                        if (v[i].is_zero()) continue;
                        t.rows.push_back({std::to_string(a), mode_str(X.k), std::to_string(b), mode_str(Y.k), std::to_string(i + 1),
                                          mode_str(m), qstr(v[i].re), qstr(v[i].im)});
                    }
            }
    r.lines = {{"convention", c.str("convention", "nullspace")},
               {"pairs", std::to_string(pairs)},
               {"antisymmetric", std::to_string(anti) + "/" + std::to_string(pairs)},
               {"closed", std::to_string(closed) + "/" + std::to_string(pairs)}};
    r.checked = true;
    r.passed = anti == pairs && closed == pairs;
    if (compare) {
        auto fam = check_pairing_table(conv, 20, c.rng, range);
        auto zer = check_zero_families(conv, 20, c.rng, range);
        int fok = 0, zok = 0;
        CsvTable f{"families", "one row per tabulated family: name, sampled (k, l), exact matches, first mismatch",
                   {"family", "sampled", "matched", "first_mismatch"}, {}};
        for (const auto& x : fam) {
            fok += x.ok();
            f.rows.push_back({x.name, std::to_string(x.sampled), std::to_string(x.matched), x.mismatch});
        }
        for (const auto& x : zer) {
            zok += x.ok();
            f.rows.push_back({"zero " + x.name, std::to_string(x.sampled), std::to_string(x.matched), x.mismatch});
        }
        r.lines.push_back({"tabulated families reproduced", std::to_string(fok) + "/" + std::to_string(fam.size())});
        r.lines.push_back({"zero families reproduced", std::to_string(zok) + "/" + std::to_string(zer.size())});
        r.passed = r.passed && fok == (int)fam.size() && zok == (int)zer.size();
        r.tables.push_back(std::move(f));
    }
    r.tables.insert(r.tables.begin(), std::move(t));
}

void task_cohomology_classes(Ctx& c, TaskResult& r) {
    auto conv = c.convention();
    int per = static_cast<int>(c.integer("count", 20, 1, 1000));
    int range = static_cast<int>(c.integer("range", 2, 1, 3));
    bool check = c.flag("check", "printed");
    auto rows = check_class_table(conv, per, c.rng, range);
    CsvTable t{"classes", "one row per tabulated class: entry, admissible (k, l) sampled, exact matches, nonzero computed classes, first mismatch",
               {"entry", "sampled", "matched", "nonzero", "first_mismatch"}, {}};
    int vacuous = 0, ok = 0;
    r.lines = {{"convention", c.str("convention", "nullspace")}, {"volume factor", "(2 pi)^3 = 8 pi^3 on integrated entries"}};
    for (const auto& x : rows) {
        t.rows.push_back({x.name, std::to_string(x.sampled), std::to_string(x.matched), std::to_string(x.nonzero), x.mismatch});
        std::string v;
        if (x.sampled == 0) {
            ++vacuous;
            v = "vacuous (no admissible k, l)";
        } else {
            ok += x.ok();
            v = std::to_string(x.matched) + "/" + std::to_string(x.sampled) + " match, " + std::to_string(x.nonzero) + " nonzero";
        }
        r.lines.push_back({x.name, v});
    }
    r.lines.push_back({"vacuous entries", std::to_string(vacuous) + "/" + std::to_string(rows.size())});
    r.lines.push_back({"admissible entries matching", std::to_string(ok) + "/" + std::to_string(rows.size() - vacuous)});
    if (check) {
        r.checked = true;
        r.passed = vacuous == 0 && ok == static_cast<int>(rows.size());
    }
    r.tables.push_back(std::move(t));
}

void task_radical_probe(Ctx& c, TaskResult& r) {
    auto ks = c.has("k") ? c.modes() : std::vector<Mode>{{1, 2, 3, 1}};
    CsvTable t{"radical", "one row per mode: admissible basis fields, rank of the pairing block, kernel dimension",
               {"k1", "k2", "k3", "k4", "fields", "rank", "kernel"}, {}};
    for (const auto& k : ks) {
        auto rp = radical_probe(k);
        t.rows.push_back({std::to_string(k[0]), std::to_string(k[1]), std::to_string(k[2]), std::to_string(k[3]),
                          std::to_string(rp.fields), std::to_string(rp.pairing_rank), std::to_string(rp.kernel_dimension)});
        r.lines.push_back({"k " + mode_str(k), std::to_string(rp.fields) + " fields, rank " + std::to_string(rp.pairing_rank) +
                                                   ", kernel " + std::to_string(rp.kernel_dimension)});
    }
    Q d = upsilon_determinant();
    r.lines.push_back({"upsilon det", qstr(d)});
    r.checked = true;
    r.passed = d != 0;
    r.tables.push_back(std::move(t));
}

using TaskFn = void (*)(Ctx&, TaskResult&);

TaskFn task_fn(const std::string& name) {
    static const std::map<std::string, TaskFn> m = {
        {"eh-regularity", task_eh_regularity}, {"b-regularity", task_b_regularity},
        {"momenta", task_momenta},             {"bf-reproduction", task_bf_reproduction},
        {"helmholtz", task_helmholtz},         {"projectability", task_projectability},
        {"jacobi-poly", task_jacobi_poly},     {"mode-solve", task_mode_solve},
        {"presymplectic-table", task_presymplectic_table},
        {"cohomology-classes", task_cohomology_classes},
        {"radical-probe", task_radical_probe},
    };
    return m.at(name);
}

TaskResult run_task(const ProblemSpec& spec, const TaskRequest& req, std::size_t index, std::uint64_t run_seed,
                    const RunOptions& opt) {
    const CatalogEntry* e = find_task(req.name);
    std::string ptr = "/tasks/" + std::to_string(index);
    if (!e) throw SpecError("unknown task '" + req.name + "'", ptr);
    TaskResult r;
    r.name = req.name;
    double tol = e->tol;
    if (auto it = spec.tolerances.find(req.name); it != spec.tolerances.end()) tol = it->second;
    if (auto it = opt.tolerances.find(req.name); it != opt.tolerances.end()) tol = it->second;
    // A task-level n resizes the built-in E-H problem; other Lagrangians are tied to their dimension.
    ProblemSpec resized;
    const ProblemSpec* sp = &spec;
    if (req.params.count("n")) {
        Ctx probe{spec, req, ptr, 0, tol, {}};
        int n = probe.n();
        if (n != spec.dimension) {
            if (spec.kind != ProblemSpec::LagrangianKind::EinsteinHilbert)
                throw SpecError("n differs from the document dimension, which only the built-in E-H Lagrangian allows", ptr + "/n");
            if (!spec.jets.empty()) throw SpecError("n differs from the dimension of the explicit jets", ptr + "/n");
            resized = spec;
            resized.signature = probe.signature(n);
            resized.dimension = n;
            sp = &resized;
        }
    }
    Ctx c{*sp, req, ptr, 0, tol, {}};
    if (req.params.count("tol")) {
        try {
            c.tol = std::stod(req.params.at("tol"));
        } catch (const std::exception&) {
            throw SpecError("number expected", ptr + "/tol");
        }
    }
    r.seed = req.params.count("seed") ? static_cast<std::uint64_t>(c.integer("seed", 0, 0, INT64_MAX)) : task_seed(run_seed, index);
    c.seed = r.seed;
    c.rng.seed(r.seed);
    try {
        task_fn(req.name)(c, r);
    } catch (const SpecError&) {
        throw;
    } catch (const std::exception& ex) {
        r.error = ex.what();
        r.checked = true;
        r.passed = false;
    }
    return r;
}

}  // namespace

Report run(const ProblemSpec& spec, const RunOptions& opt) {
    Report rep;
    rep.seed = opt.seed.value_or(spec.seed);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        const auto& f = opt.task_filter;
        if (f.empty() || std::find(f.begin(), f.end(), spec.tasks[i].name) != f.end()) idx.push_back(i);
    }
    std::vector<TaskResult> results(idx.size());
    std::vector<std::exception_ptr> errors(idx.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j; (j = next++) < idx.size();) {
            try {
                results[j] = run_task(spec, spec.tasks[idx[j]], idx[j], rep.seed, opt);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(idx.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    rep.tasks = std::move(results);
    return rep;
}

}  // namespace jv
