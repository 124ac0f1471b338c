#pragma once

#include <string>
#include <vector>

namespace meshfab {

struct DesignSpec {
    long servers = 0;
    int ports = 0;
    double r_end_to_end = 0, r_tor = 0;
    long ecmp_mem = 16000;

    int d = 0;        // fabric-facing uplinks per ToR
    long n = 0;       // ToR count
    int h = 0, p = 0;
    double predicted_mesh_oversub = 0;
    bool feasible = false;
    std::vector<std::string> audit;  // constraint evaluation trail
};

// Largest h whose ECMP-group tables fit: min(n*h, h*d^h) <= mem_entries,
// capped at d, floor 1.
int max_h(long n, int d, long mem_entries);

// Minimal-cost fabric for s servers on P-port switches: binary search for the
// smallest d meeting the ToR-oversubscription, operating-regime and port
// constraints, with the mesh model supplying the viability check. The desired
// mesh-layer oversubscription for candidate d is r_e * d / (P - d), i.e. the
// end-to-end target divided by the candidate's actual ToR ratio.
DesignSpec design_fabric(long servers, int ports, double r_end_to_end, double r_tor,
                         long ecmp_mem = 16000);

struct FatTreeDesign {
    long tor = 0, agg = 0, spine = 0, total = 0;
    double agg_down_ports = 0;  // per switch; fractional under port splitting
};

// Generalized 3-tier fat tree with non-oversubscribed ToRs and the
// aggregation->spine stage carrying the oversubscription; layer counts are
// independently rounded up.
FatTreeDesign fat_tree_design(long servers, int ports, double oversub);

// Percent fewer switches than the equally-oversubscribed fat tree.
double cost_reduction(long servers, int ports, double oversub, long ecmp_mem = 16000);

}  // namespace meshfab
