#include "green/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace green {

namespace {

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    const Index rows = static_cast<Index>(j.size());
    const Index cols = rows > 0 ? static_cast<Index>(j.at(0).size()) : 0;
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
    return m;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vector vector_from_json(const Json& j) {
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

}  // namespace

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Json to_json(const Box& box) {
    return Json{{"dim", box.dim},
                {"lo", {box.lo[0], box.lo[1], box.lo[2]}},
                {"hi", {box.hi[0], box.hi[1], box.hi[2]}}};
}

Box box_from_json(const Json& j) {
    Box b;
    b.dim = j.at("dim").get<int>();
    for (int d = 0; d < 3; ++d) {
        b.lo[d] = j.at("lo").at(d).get<double>();
        b.hi[d] = j.at("hi").at(d).get<double>();
    }
    return b;
}

Json to_json(const Grid& grid) {
    return Json{{"box", to_json(grid.box())},
                {"nodes_per_axis", grid.nodes_per_axis()},
                {"nodes", matrix_to_json(grid.nodes())},
                {"weights", vector_to_json(grid.weights())}};
}

Grid grid_from_json(const Json& j) {
    const Box box = box_from_json(j.at("box"));
    return Grid::from_nodes(box, box.dim, matrix_from_json(j.at("nodes")),
                            vector_from_json(j.at("weights")),
                            j.at("nodes_per_axis").get<Index>());
}

Json to_json(const CovKernelSpec& kernel) {
    if (kernel.family() == CovKernelSpec::Family::squared_exponential)
        return Json{{"family", "squared_exponential"}, {"length_scale", kernel.length_scale()}};
    return Json{{"family", "user_tabulated"}, {"table", matrix_to_json(kernel.table())}};
}

CovKernelSpec kernel_from_json(const Json& j, const Grid& grid) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "squared_exponential")
        return CovKernelSpec::squared_exponential(j.at("length_scale").get<double>());
    if (family == "user_tabulated")
        return CovKernelSpec::tabulated(grid, matrix_from_json(j.at("table")));
    throw std::invalid_argument("unknown kernel family: " + family);
}

Json to_json(const MercerBasis& basis) {
    // eigenfunctions[j] is the j-th eigenfunction's nodal values
    Json funcs = Json::array();
    for (Index c = 0; c < basis.modes(); ++c)
        funcs.push_back(vector_to_json(basis.eigenfunctions.col(c)));
    return Json{{"grid", to_json(basis.grid)},
                {"eigenvalues", vector_to_json(basis.eigenvalues)},
                {"eigenfunctions", std::move(funcs)},
                {"trace", basis.trace}};
}

MercerBasis mercer_from_json(const Json& j) {
    MercerBasis basis;
    basis.grid = grid_from_json(j.at("grid"));
    basis.eigenvalues = vector_from_json(j.at("eigenvalues"));
    basis.trace = j.at("trace").get<double>();
    const Json& funcs = j.at("eigenfunctions");
    basis.eigenfunctions.resize(basis.grid.size(), static_cast<Index>(funcs.size()));
    for (Index c = 0; c < basis.eigenfunctions.cols(); ++c)
        basis.eigenfunctions.col(c) = vector_from_json(funcs.at(c));
    return basis;
}

Json to_json(const HsOperator& op) {
    return Json{{"row_grid", to_json(op.row_grid)},
                {"col_grid", to_json(op.col_grid)},
                {"kernel_values", matrix_to_json(op.kernel)}};
}

HsOperator hsop_from_json(const Json& j) {
    return HsOperator(grid_from_json(j.at("row_grid")), grid_from_json(j.at("col_grid")),
                      matrix_from_json(j.at("kernel_values")));
}

Json to_json(const AdmissiblePartition& part) {
    Json adm = Json::array();
    for (const BoxPair& pair : part.admissible)
        adm.push_back(Json{{"X", to_json(pair.X)}, {"Y", to_json(pair.Y)}, {"level", pair.level}});
    return Json{{"rho", part.rho},
                {"levels", part.levels},
                {"dim", part.dim},
                {"domain", to_json(part.domain)},
                {"admissible", std::move(adm)},
                {"counts",
                 {{"admissible", part.admissible.size()},
                  {"non_admissible", part.non_admissible.size()}}}};
}

Json to_json(const HierGreen& g) {
    Json blocks = Json::array();
    for (const LowRankBlock& b : g.blocks)
        blocks.push_back(Json{{"X", to_json(b.X)},
                              {"Y", to_json(b.Y)},
                              {"level", b.level},
                              {"rank", b.rank},
                              {"queries_used", b.queries_used},
                              {"left", matrix_to_json(b.left.columns)},
                              {"right", matrix_to_json(b.right.columns)}});
    return Json{{"grid", to_json(g.grid)},
                {"kernel", to_json(g.kernel)},
                {"partition",
                 {{"rho", g.partition.rho},
                  {"levels", g.partition.levels},
                  {"domain", to_json(g.partition.domain)}}},
                {"config",
                 {{"k", g.k},
                  {"p", g.p},
                  {"seed", g.seed},
                  {"epsilon_target", g.epsilon_target},
                  {"epsilon_effective", g.epsilon_effective}}},
                {"total_queries", g.total_queries},
                {"blocks", std::move(blocks)}};
}

HierGreen hiergreen_from_json(const Json& j) {
    HierGreen g;
    g.grid = grid_from_json(j.at("grid"));
    g.kernel = kernel_from_json(j.at("kernel"), g.grid);
    const Json& pj = j.at("partition");
    g.partition = build_partition(box_from_json(pj.at("domain")), pj.at("levels").get<int>(),
                                  pj.at("rho").get<double>());
    const Json& cj = j.at("config");
    g.k = cj.at("k").get<Index>();
    g.p = cj.at("p").get<Index>();
    g.seed = cj.at("seed").get<std::uint64_t>();
    g.epsilon_target = cj.at("epsilon_target").get<double>();
    g.epsilon_effective = cj.at("epsilon_effective").get<double>();
    g.total_queries = j.at("total_queries").get<long>();

    for (const Json& bj : j.at("blocks")) {
        LowRankBlock b;
        b.X = box_from_json(bj.at("X"));
        b.Y = box_from_json(bj.at("Y"));
        b.level = bj.at("level").get<int>();
        b.rank = bj.at("rank").get<Index>();
        b.queries_used = bj.at("queries_used").get<Index>();
        GridRestriction rx = restrict_to(g.grid, b.X);
        GridRestriction ry = restrict_to(g.grid, b.Y);
        b.left = Quasimatrix(rx.subgrid, matrix_from_json(bj.at("left")));
        b.right = Quasimatrix(ry.subgrid, matrix_from_json(bj.at("right")));
        b.row_index_map = std::move(rx.index_map);
        b.col_index_map = std::move(ry.index_map);
        g.blocks.push_back(std::move(b));
    }
    index_blocks(g);
    return g;
}

Json to_json(const ErrorReport& report) {
    Json blocks = Json::array();
    for (const BlockErrorEntry& e : report.per_block)
        blocks.push_back(Json{{"X", to_json(e.X)},
                              {"Y", to_json(e.Y)},
                              {"level", e.level},
                              {"error_sq_xy", e.error_sq_xy},
                              {"error_sq_yx", e.error_sq_yx},
                              {"gamma_k", e.gamma_k},
                              {"k_used", e.k_used}});
    return Json{{"relative_l2_error", report.relative_l2_error},
                {"admissible_relative_error", report.admissible_relative_error},
                {"non_admissible_mass_sq", report.non_admissible_mass_sq},
                {"reference_norm", report.reference_norm},
                {"gamma_eps", report.gamma_eps},
                {"gamma_eps_harmonic_bound", report.gamma_eps_harmonic_bound},
                {"n_queries", report.n_queries},
                {"epsilon_target", report.epsilon_target},
                {"per_block", std::move(blocks)}};
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(1) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace green
