#include "common.hpp"
#include "jetvar/cli.hpp"

using namespace jv;

namespace {

bool has_task(const std::string& name) {
    for (const auto& t : list_tasks())
        if (t.name == name) return true;
    return false;
}

std::string line_value(const TaskResult& r, const std::string& key) {
    for (const auto& [k, v] : r.lines)
        if (k == key) return v;
    return "";
}

}  // namespace

TEST_CASE("task catalog") {
    CHECK(has_task("projectability"));
    CHECK(has_task("presymplectic-table"));
    CHECK(has_task("mode-solve"));
    for (const auto& t : list_tasks()) CHECK_FALSE(t.description.empty());
}

TEST_CASE("empty task list gives an empty successful report") {
    auto rep = run(parse_problem("{}"));
    CHECK(rep.ok());
    CHECK(rep.tasks.empty());
    CHECK(rep.csv_files().empty());
}

TEST_CASE("eh-regularity task") {
    auto spec = parse_problem(R"({"tasks": ["eh-regularity n=4 seed=7 count=100"]})");
    auto rep = run(spec);
    REQUIRE(rep.tasks.size() == 1);
    CHECK(rep.tasks[0].checked);
    CHECK(rep.tasks[0].passed);
    CHECK(rep.tasks[0].seed == 7);
    CHECK(rep.ok());
}

TEST_CASE("jacobi-poly task") {
    auto rep = run(parse_problem(R"({"tasks": ["jacobi-poly degree=2"]})"));
    REQUIRE(rep.tasks.size() == 1);
    CHECK(line_value(rep.tasks[0], "dimension") == "90");
    CHECK(rep.render().find("dimension: 90") != std::string::npos);
    auto files = rep.csv_files();
    REQUIRE(files.size() == 1);
    const auto& csv = files.begin()->second;
    CHECK(csv.rfind("basis,monomial,field,coefficient\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 90);
}

TEST_CASE("runs are deterministic and the seed can be overridden") {
    std::string doc = R"({"seed": 5, "tasks": ["mode-solve count=5", {"name": "presymplectic-table", "count": 1}]})";
    auto a = run(parse_problem(doc)), b = run(parse_problem(doc));
    CHECK(a.csv_files() == b.csv_files());
    CHECK(a.render() == b.render());

    RunOptions two;
    two.jobs = 2;
    CHECK(run(parse_problem(doc), two).csv_files() == a.csv_files());

    RunOptions o;
    o.seed = 6;
    auto c = run(parse_problem(doc), o);
    CHECK(c.seed == 6);
    CHECK(c.tasks[0].seed == task_seed(6, 0));
    CHECK(c.csv_files() != a.csv_files());
}

TEST_CASE("syntax errors report line and column") {
    try {
        parse_problem("{\n  \"seed\": 1,\n  \"tasks\": [,]\n}");
        FAIL("no error");
    } catch (const SpecError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
}

TEST_CASE("field errors report a JSON pointer") {
    auto pointer_of = [](const std::string& doc) {
        try {
            parse_problem(doc);
        } catch (const SpecError& e) {
            return e.pointer;
        }
        return std::string("none");
    };
    CHECK(pointer_of(R"({"dimension": "four"})") == "/dimension");
    CHECK(pointer_of(R"({"colour": 1})") == "/colour");
    CHECK(pointer_of(R"({"tasks": ["mode-solve", "no-such-task"]})") == "/tasks/1");
    CHECK(pointer_of(R"({"lagrangian": {"kind": "user", "expression": "y1_11"}})") == "/lagrangian/fibre");
    CHECK_THROWS_AS(validate_task(parse_task_line("mode-solve bogus=1"), "/x"), SpecError);
}

TEST_CASE("a failed check makes the report fail") {
    auto rep = run(parse_problem(R"({"tasks": ["mode-solve k=1,2,0,0 check=printed"]})"));
    REQUIRE(rep.tasks.size() == 1);
    CHECK(rep.tasks[0].checked);
    CHECK_FALSE(rep.tasks[0].passed);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("user Lagrangian projectability") {
    auto rep = run(parse_problem(
        R"({"dimension": 2, "lagrangian": {"kind": "user", "expression": "y1_11^2", "fibre": 1},
            "tasks": [{"name": "projectability", "expect": "non-affine"}]})"));
    CHECK(rep.ok());
}

TEST_CASE("task-level n resizes only the built-in E-H problem") {
    auto rep = run(parse_problem(R"({"dimension": 4, "tasks": ["helmholtz n=2 count=2"]})"));
    CHECK(rep.ok());
    auto user = parse_problem(R"({"dimension": 2, "lagrangian": {"kind": "user", "expression": "y1_11^2", "fibre": 1},
                                  "tasks": ["helmholtz n=3 count=1"]})");
    try {
        run(user);
        FAIL("no error");
    } catch (const SpecError& e) {
        CHECK(e.pointer == "/tasks/0/n");
    }
}
