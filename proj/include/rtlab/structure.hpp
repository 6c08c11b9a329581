#pragma once

#include <iosfwd>
#include <vector>

#include "rtlab/mesh.hpp"

namespace rtlab {

struct StructureOptions {
    double alpha = 1.0;        // exponent hypothesis for the thresholds
    double threshold_c = 1.0;  // classification constant C
};

/// Classification of one mesh. Interior edge e is "regular" when the two
/// opposite-edge-pair length deviations of the adjacent triangle pair stay
/// below C h^(1+alpha); a boundary vertex is regular when the three
/// corresponding-edge deviations stay below C h^(1+alpha) and the tangent gap
/// below C h^alpha. kappa counts the irregular boundary vertices.
struct LevelStructure {
    double h = 0.0;
    int n_interior_edges = 0;
    int n_e1 = 0;
    int n_e2 = 0;
    double e2_measure = 0.0;         // sum of |tau| + |tau'| over irregular edges
    int n_boundary_vertices = 0;
    int kappa = 0;                   // |P2|
    double max_deviation = 0.0;      // over all interior edges
    double max_e1_deviation = 0.0;   // over regular edges only
    std::vector<int> e2_edges;       // global indices of irregular interior edges
    std::vector<int> p2_vertices;    // irregular boundary vertices
    // per-entity data, indexed by global edge / vertex id (NaN where not applicable)
    std::vector<double> edge_deviation;
    std::vector<double> vertex_edge_deviation;  // worst corresponding-edge gap
    std::vector<double> vertex_tangent_gap;     // |t - t'|
};

struct MeshStructureReport {
    StructureOptions options;
    std::vector<LevelStructure> level;
    // Fits across levels; quiet NaN when unavailable (fewer than 2 usable levels),
    // +inf when the quantity vanishes at every level.
    double alpha_hat = 0.0;
    double sigma_hat = 0.0;
    double rho = 0.0;  // min(1, alpha, sigma_hat / 2)
};

/// Deviation data for a single interior edge (max over the two opposite pairs).
double parallelogram_deviation(const Mesh& mesh, int e);

LevelStructure analyze_structure(const Mesh& mesh, const StructureOptions& opt);
MeshStructureReport analyze_structure(const std::vector<Mesh>& levels,
                                      const StructureOptions& opt);
MeshStructureReport analyze_structure_single(const Mesh& mesh, const StructureOptions& opt);

/// CSV rows: level,h,E1,E2,E2_measure,kappa,alphahat,sigmahat,rho
void write_structure_csv(const MeshStructureReport& report, std::ostream& out);

}  // namespace rtlab
