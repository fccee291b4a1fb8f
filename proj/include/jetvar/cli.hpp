#pragma once
// Batch front-end: problem documents in JSON, a task catalog, deterministic reports and CSV
// tables. The jetvar-cli tool and the Python module are thin wrappers around run().

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jv {

// Invalid problem document. line/column are set for syntax errors, pointer (a JSON pointer
// such as /tasks/2/degree) for field errors.
struct SpecError : std::runtime_error {
    SpecError(const std::string& msg, std::string ptr, int line_ = 0, int column_ = 0);
    std::string pointer;
    int line = 0, column = 0;
};

struct TaskRequest {
    std::string name;
    std::map<std::string, std::string> params;  // values kept as text, parsed per task
};

struct ProblemSpec {
    enum class LagrangianKind { EinsteinHilbert, BF, User };
    LagrangianKind kind = LagrangianKind::EinsteinHilbert;
    std::vector<std::pair<std::string, std::string>> beta;  // "k,l,j,i" -> expression
    std::string expression;                                 // user Lagrangian
    int fibre = 0;                                          // user Lagrangian fibre dimension
    int dimension = 4;
    std::vector<int> signature;                             // +-1 per base coordinate
    std::uint64_t seed = 0;
    int sample_count = 20;
    std::vector<std::vector<double>> jets;                  // explicit flat order-2 jets
    std::map<std::string, double> tolerances;               // per task name
    std::vector<TaskRequest> tasks;

    int n_minus() const;
};

// Parses the JSON document. Throws SpecError.
ProblemSpec parse_problem(const std::string& text);
// "eh-regularity n=4 seed=7 count=100".
TaskRequest parse_task_line(const std::string& line);
// Unknown task names or parameters raise SpecError at ptr.
void validate_task(const TaskRequest& t, const std::string& ptr);

struct TaskInfo {
    std::string name, description;
};
const std::vector<TaskInfo>& list_tasks();

struct CsvTable {
    std::string name;  // file stem
    std::string schema;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string render() const;
};

struct TaskResult {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> lines;
    bool checked = false;  // the task carried a pass/fail check
    bool passed = true;
    std::string error;     // set when the task aborted
    std::vector<CsvTable> tables;
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<TaskResult> tasks;
    bool ok() const;
    std::string render() const;
    // File name -> contents for every CSV table, named <task index>-<table>.csv.
    std::map<std::string, std::string> csv_files() const;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> tolerances;
    std::vector<std::string> task_filter;  // empty: all
    int jobs = 1;
};

// Per-task seed: splitmix64 of the run seed and the task position.
std::uint64_t task_seed(std::uint64_t run_seed, std::size_t index);

Report run(const ProblemSpec& spec, const RunOptions& opt = {});

}  // namespace jv
