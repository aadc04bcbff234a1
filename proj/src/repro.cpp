#include "surfemb/repro.hpp"

#include "surfemb/flat_embedder.hpp"
#include "surfemb/hex_pipeline.hpp"
#include "surfemb/hyperbolic_core.hpp"
#include "surfemb/klein_obstruction.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <set>
#include <sstream>

namespace surfemb::repro {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
    std::ostream& out;
    int& failures;

    void emit(int idx, const std::string& name, bool pass, const std::string& detail,
              double secs, double budget) {
        bool in_budget = secs <= budget;
        if (!pass || !in_budget) ++failures;
        out << "[" << idx << "] " << std::left << std::setw(28) << name
            << (pass && in_budget ? "PASS" : "FAIL") << "  " << detail << "  ("
            << std::fixed << std::setprecision(3) << secs << "s, budget " << budget << "s)"
            << (in_budget ? "" : "  [over budget]") << "\n";
    }
};

}  // namespace

std::string default_catalog_dir() {
    if (const char* env = std::getenv("SURFEMB_CATALOG")) return env;
#ifdef SURFEMB_DATA_DIR
    return std::string(SURFEMB_DATA_DIR) + "/catalog";
#else
    return "data/catalog";
#endif
}

int run_all(const Options& opt, std::ostream& out) {
    int failures = 0;
    Line line{out, failures};
    std::string catalog_dir = opt.catalog_dir.empty() ? default_catalog_dir() : opt.catalog_dir;

    // 1. Klein obstruction arithmetic, exact.
    {
        auto t0 = Clock::now();
        auto rep = klein::certify_obstruction(3, 1, flat::Length::rational(1));
        double secs = seconds_since(t0);
        bool pass = rep.verdict == klein::ObstructionVerdict::Obstructed && rep.exact &&
                    rep.per_edge_bound.p == Rational(5, 8) && rep.per_edge_bound.q == 0 &&
                    rep.total_bound.p == Rational(15, 8) && rep.required.p == 2;
        line.emit(1, "klein-obstruction-15/8", pass, "3 x 5/8 = 15/8 < 2, exact rationals", secs,
                  0.001);
    }

    // 2. Threshold flips at b = sqrt(4/3).
    {
        auto t0 = Clock::now();
        double lo = 1.0, hi = 1.3;
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            if (klein::certify_obstruction_numeric(3, 1.0, mid) ==
                klein::ObstructionVerdict::Obstructed)
                lo = mid;
            else
                hi = mid;
        }
        double flip = 0.5 * (lo + hi);
        double target = std::sqrt(4.0 / 3.0);
        double secs = seconds_since(t0);
        std::ostringstream d;
        d << "bisection flip at b=" << std::setprecision(12) << flip << ", |b - sqrt(4/3)| = "
          << std::scientific << std::setprecision(2) << std::abs(flip - target);
        line.emit(2, "threshold-sqrt(4/3)", std::abs(flip - target) < 1e-9, d.str(), secs, 1.0);
    }

    // 3. Flat verifier soundness: catalog entries + grids, with lift mutations.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        int entries_checked = 0;
        std::vector<femb::CatalogEntry> catalog;
        try {
            catalog = femb::catalog_load(catalog_dir);
        } catch (const std::exception& e) {
            pass = false;
            d << "catalog: " << e.what();
        }
        for (const auto& e : catalog) {
            if (e.drawing.surface.is_klein()) continue;
            if (!femb::verify_drawing(e.drawing, 1e-9).pass()) {
                pass = false;
                d << e.name << " failed; ";
            }
            ++entries_checked;
        }
        long long mutations = 0;
        int full_mutation_checks = 0;
        for (int n = 3; n <= 8 && pass; ++n) {
            auto grid = femb::grid_torus_drawing(n);
            if (!femb::verify_drawing(grid, 1e-9).pass()) {
                pass = false;
                d << "grid " << n << " failed; ";
                break;
            }
            for (int e = 0; e < static_cast<int>(grid.map.edge_sign.size()); ++e) {
                if (!grid.map.edge_alive(e)) continue;
                auto mutated = flat::compose_deck({1, 0}, grid.edge_lifts[e], grid.surface);
                int u = grid.map.origin[2 * e], v = grid.map.origin[2 * e + 1];
                auto verdict = flat::is_unique_shortest_lift(grid.positions[v], mutated,
                                                             grid.positions[u], grid.surface,
                                                             1e-9);
                ++mutations;
                if (verdict == flat::LiftVerdict::Unique) {
                    pass = false;
                    d << "grid " << n << " edge " << e << " mutation stayed shortest; ";
                    break;
                }
                // spot-check the full report on a few mutations
                if (e % 37 == 0) {
                    auto bad = grid;
                    bad.edge_lifts[e] = mutated;
                    if (femb::verify_drawing(bad, 1e-9).pass()) {
                        pass = false;
                        d << "full verify accepted a mutated grid; ";
                        break;
                    }
                    ++full_mutation_checks;
                }
            }
        }
        double secs = seconds_since(t0);
        if (pass)
            d << entries_checked << " torus entries + grids 3..8 verified; " << mutations
              << " lift mutations flip (" << full_mutation_checks << " full-report checks)";
        line.emit(3, "flat-verifier-soundness", pass, d.str(), secs, 10.0);
    }

    // 4. Contraction pipeline on 100 random triangulations.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        std::vector<femb::CatalogEntry> torus_entries;
        try {
            for (auto& e : femb::catalog_load(catalog_dir))
                if (!e.drawing.surface.is_klein()) torus_entries.push_back(std::move(e));
        } catch (const std::exception& e) {
            pass = false;
            d << e.what();
        }
        auto surface = flat::make_surface(flat::SurfaceKind::torus, 1, flat::Length::rational(1));
        Rng rng(opt.seed);
        int done = 0;
        for (int iter = 0; iter < 100 && pass && !torus_entries.empty(); ++iter) {
            const auto& entry = torus_entries[rng.below(torus_entries.size())];
            maps::CombinatorialMap m = entry.map;
            int target = 10 + static_cast<int>(rng.below(21));
            int guard = 0;
            while (m.num_vertices() < target && guard++ < 1000) femb::random_vertex_split(m, rng);
            try {
                auto drawing = femb::embed(m, surface, torus_entries, 1e-9);
                if (!femb::verify_drawing(drawing, 1e-9).pass()) {
                    pass = false;
                    d << "iteration " << iter << ": output failed verification";
                }
            } catch (const std::exception& e) {
                pass = false;
                d << "iteration " << iter << ": " << e.what();
            }
            ++done;
        }
        double secs = seconds_since(t0);
        if (pass) d << done << " random triangulations embedded and verified";
        line.emit(4, "contraction-pipeline", pass, d.str(), secs, 120.0);
    }

    // 5. Regular right-angled hexagon geometry.
    {
        auto t0 = Clock::now();
        auto hex = hyp::regular_right_angled_hexagon();
        double smin = 1e300, smax = 0, worst_angle = 0;
        for (int k = 0; k < 6; ++k) {
            double s = hyp::h_distance(hex.vertices[k], hex.vertices[(k + 1) % 6]);
            smin = std::min(smin, s);
            smax = std::max(smax, s);
            double a = hyp::angle_at(hex.vertices[k], hex.vertices[(k + 1) % 6],
                                     hex.vertices[(k + 5) % 6]);
            worst_angle = std::max(worst_angle, std::abs(a - M_PI / 2));
        }
        hyp::HPoint center{1, 0, 0};
        double area = 0;
        for (int k = 0; k < 6; ++k) {
            const auto& u = hex.vertices[k];
            const auto& v = hex.vertices[(k + 1) % 6];
            area += M_PI - (hyp::angle_at(center, u, v) + hyp::angle_at(u, v, center) +
                            hyp::angle_at(v, center, u));
        }
        double secs = seconds_since(t0);
        bool pass = (smax - smin) < 1e-9 && worst_angle < 1e-9 && std::abs(area - M_PI) < 1e-6;
        std::ostringstream d;
        d << "side spread " << std::scientific << std::setprecision(2) << smax - smin
          << ", angle dev " << worst_angle << ", |area - pi| = " << std::abs(area - M_PI);
        line.emit(5, "right-angled-hexagon", pass, d.str(), secs, 0.001);
    }

    // 6. Tutte solver on 50 random disks.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        auto hex = hyp::regular_right_angled_hexagon();
        Rng rng(opt.seed + 6);
        double worst_grad = 0, worst_fd = 0;
        for (int trial = 0; trial < 50 && pass; ++trial) {
            int boundary = 6 + static_cast<int>(rng.below(7));
            int target = 20 + static_cast<int>(rng.below(81));
            // random disk triangulation: stellate the polygon, then random faces
            std::vector<std::vector<int>> lists(boundary);
            for (int i = 0; i < boundary; ++i)
                lists[i] = {(i + boundary - 1) % boundary, (i + 1) % boundary};
            auto m = maps::map_from_rotations(lists);
            maps::DiskMap disk{m, maps::faces(m)[0]};
            disk = maps::triangulate_disk(disk);
            while (disk.map.num_vertices() < target) {
                auto fs = maps::faces(disk.map);
                std::set<int> outer(disk.outer.begin(), disk.outer.end());
                std::vector<std::vector<int>> interior;
                for (auto& f : fs)
                    if (!outer.count(f[0])) interior.push_back(f);
                maps::stellate_face(disk.map, interior[rng.below(interior.size())]);
            }
            hyp::BoundaryAssignment asg;
            asg.fixed.resize(disk.map.rotation.size());
            auto bverts = disk.boundary_vertices();
            for (size_t i = 0; i < bverts.size(); ++i) {
                double u = 6.0 * static_cast<double>(i) / bverts.size();
                asg.fixed[bverts[i]] = hex.side_point(static_cast<int>(u), u - static_cast<int>(u));
            }
            asg.weights.assign(disk.map.edge_sign.size(), 1.0);
            for (auto& w : asg.weights) w = rng.uniform(0.5, 2.0);
            hyp::TutteResult res;
            try {
                res = hyp::tutte_embed(hex, disk, asg, 1e-8, 200000);
            } catch (const std::exception& e) {
                pass = false;
                d << "trial " << trial << ": " << e.what();
                break;
            }
            for (size_t i = 1; i < res.diag.energy_history.size(); ++i) {
                if (res.diag.energy_history[i] >
                    res.diag.energy_history[i - 1] + 1e-12 * (1 + res.diag.energy_history[i - 1])) {
                    pass = false;
                    d << "energy increased in trial " << trial;
                }
            }
            if (!res.diag.converged || res.diag.max_gradient >= 1e-7 || !res.diag.certificate()) {
                pass = false;
                d << "trial " << trial << " grad=" << res.diag.max_gradient << " cert="
                  << res.diag.certificate();
                break;
            }
            worst_grad = std::max(worst_grad, res.diag.max_gradient);
            // finite-difference oracle on three free vertices
            std::set<int> bset(bverts.begin(), bverts.end());
            int checked = 0;
            for (int v : disk.map.alive_vertices()) {
                if (bset.count(v) || checked >= 3) continue;
                ++checked;
                hyp::HTangent grad;
                for (int dart : disk.map.rotation[v]) {
                    auto l = hyp::log_map(res.positions[v], res.positions[disk.map.head(dart)]);
                    double c = asg.weights[disk.map.edge_of(dart)];
                    for (int i = 0; i < 3; ++i) grad.c[i] += -2 * c * l.c[i];
                }
                // direction: toward the first neighbor
                auto dir = hyp::log_map(res.positions[v],
                                        res.positions[disk.map.head(disk.map.rotation[v][0])]);
                double nd = hyp::tangent_norm(dir);
                if (nd == 0) continue;
                for (auto& c : dir.c) c /= nd;
                const double h = 1e-5;
                auto energy_at = [&](double t) {
                    auto pos = res.positions;
                    hyp::HTangent step = dir;
                    for (auto& c : step.c) c *= t;
                    pos[v] = hyp::exp_map(res.positions[v], step);
                    return hyp::spring_energy(disk.map, asg.weights, pos);
                };
                double fd = (energy_at(h) - energy_at(-h)) / (2 * h);
                double an = dir.c[1] * grad.c[1] + dir.c[2] * grad.c[2] - dir.c[0] * grad.c[0];
                double rel = std::abs(fd - an) / (1 + std::abs(an));
                worst_fd = std::max(worst_fd, rel);
                if (rel > 1e-5) {
                    pass = false;
                    d << "finite-difference mismatch " << rel << " in trial " << trial;
                    break;
                }
            }
        }
        double secs = seconds_since(t0);
        if (pass)
            d << "50 disks: max gradient " << std::scientific << std::setprecision(2) << worst_grad
              << ", worst FD deviation " << worst_fd;
        line.emit(6, "tutte-solver", pass, d.str(), secs, 60.0);
    }

    // 7. Genus-g pipeline with linear arc growth.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        std::vector<double> xs, ys;
        for (int g = 2; g <= 5 && pass; ++g) {
            try {
                auto res = hexp::embed_on_genus_g(hexp::test_family(g));
                if (!res.diag.all_certificates) {
                    pass = false;
                    d << "certificates failed at g=" << g;
                    break;
                }
                if (res.drawing.max_arcs_per_edge > res.diag.reported_bound) {
                    pass = false;
                    d << "arc bound exceeded at g=" << g;
                    break;
                }
                xs.push_back(g);
                ys.push_back(res.drawing.max_arcs_per_edge);
            } catch (const std::exception& e) {
                pass = false;
                d << "g=" << g << ": " << e.what();
            }
        }
        double slope = 0;
        if (pass) {
            double n = xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            double icept = (sy - slope * sx) / n;
            for (size_t i = 0; i < xs.size(); ++i) {
                if (std::abs(icept + slope * xs[i] - ys[i]) > 0.75 + 0.05 * ys[i]) {
                    pass = false;
                    d << "arc counts deviate from the linear fit";
                }
            }
            if (pass) {
                d << "max arcs per edge for g=2..5:";
                for (double y : ys) d << " " << y;
                d << "; least-squares slope " << std::setprecision(3) << slope << " per genus";
            }
        }
        double secs = seconds_since(t0);
        line.emit(7, "genus-g-pipeline", pass, d.str(), secs, 300.0);
    }

    // 8. Crossing bound for two independent drawings.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        double fitted_c = 0;
        for (int g = 2; g <= 4 && pass; ++g) {
            try {
                auto d0 = hexp::embed_on_genus_g(hexp::test_family(g, 0));
                hexp::PipelineConfig cfg1;
                cfg1.phase = 0.23;
                auto d1 = hexp::embed_on_genus_g(hexp::test_family(g, 1), cfg1);
                if (!d0.diag.all_certificates || !d1.diag.all_certificates) {
                    pass = false;
                    d << "certificates failed at g=" << g;
                    break;
                }
                auto rep = hexp::count_crossings(d0.drawing, d1.drawing);
                fitted_c = std::max(fitted_c, static_cast<double>(rep.max_pair) / g);
                d << "g=" << g << " max-pair " << rep.max_pair << " total " << rep.total << "; ";
            } catch (const std::exception& e) {
                pass = false;
                d << "g=" << g << ": " << e.what();
            }
        }
        if (pass) {
            d << "fitted c = " << std::setprecision(3) << fitted_c;
            if (fitted_c > 16) {
                pass = false;
                d << " (exceeds the sanity bound 16)";
            }
        }
        double secs = seconds_since(t0);
        line.emit(8, "crossing-bound", pass, d.str(), secs, 300.0);
    }

    // 9. G_g rigidity certificate.
    {
        auto t0 = Clock::now();
        bool pass = true;
        std::ostringstream d;
        for (int g = 2; g <= 5 && pass; ++g) {
            auto m = maps::build_gg(maps::gg_necklace(g));
            auto rep = maps::verify_gg_rigidity(m, g);
            if (!rep.pass()) {
                pass = false;
                d << "g=" << g << " violations: ";
                for (auto& v : rep.violations) d << v << "; ";
            } else {
                d << "g=" << g << " v-e+t=" << rep.vertices - rep.edges + rep.triangles
                  << " 3-cycles=" << rep.triangles << "=faces; ";
            }
        }
        double secs = seconds_since(t0);
        line.emit(9, "gg-rigidity", pass, d.str(), secs, 10.0);
    }

    out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
        << "\n";
    return failures;
}

}  // namespace surfemb::repro
