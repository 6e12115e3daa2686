#pragma once

// Exact overlay of curve systems on a gluing scheme.  Builds the planar
// arrangement of all walls (curves/loops) plus the polygon boundary inside
// each chart, traces faces, then glues faces across identified boundary
// sub-edges into surface regions.  Regions carry Euler characteristic,
// orientability, boundary-circle structure, and marked-point counts; bigons
// and monogons fall out of the circle corner counts.
//
// Region Euler characteristics use chi(R) = V_c - E_g + sum_f (1 - holes(f)):
// interior polygon-corner classes minus glued sub-edge pairs plus face
// contributions; boundary vertices and edges cancel circle by circle.

#include "crosscap/curve.hpp"
#include "crosscap/rational.hpp"
#include "crosscap/surface.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace crosscap {

// A wall is a closed embedded curve or a based loop (self-crossings allowed,
// repeated visits allowed only at declared base points).
struct Wall {
    const CurveEmbedding* curve = nullptr;
    bool allow_self_crossing = false;
    std::vector<std::pair<int, Pt>> base_points;  // (chart, point) where re-visits are legal
};

class Overlay {
  public:
    struct Node {
        int poly = 0;
        Pt p;
        enum class Kind { Interior, OnSide, PolyCorner } kind = Kind::Interior;
        int side = -1;  // OnSide: global side id
        Rat t;          // OnSide: arrow parameter
        int corner_v = -1;  // PolyCorner: local vertex index
        bool base_point = false;
        std::vector<int> out;  // outgoing halfedges, ccw by angle
        std::set<int> walls_here;  // walls with a segment endpoint or crossing here
        int wall_degree = 0;       // germs that belong to walls
    };

    struct Edge {
        int u = -1, v = -1;
        int poly = 0;
        int wall = -1;             // -1: polygon boundary
        int pass = -1, seg = -1;   // origin within the wall
        int side = -1;             // boundary: global side id
    };

    struct Face {
        int poly = 0;
        std::vector<int> outer;        // halfedges, ccw
        std::vector<std::vector<int>> holes;
        int region = -1;
        bool dropped = false;  // the unbounded complement of the polygon
    };

    struct CircleStep {
        int he = -1;                // wall halfedge in traversal direction
        bool region_left = true;    // region side: left of he, or right
        bool corner_after = false;  // boundary turns at the end node of this step
    };

    struct Circle {
        std::vector<CircleStep> steps;
        int corners = 0;
        std::set<int> walls;
        // Maximal runs of same-wall steps between corners; for a bigon these
        // are its two arcs.
        struct Arc {
            int wall = -1;
            std::vector<int> hes;
            std::vector<bool> region_left;
        };
        std::vector<Arc> arcs;
    };

    struct Region {
        std::vector<int> faces;
        int chi = 0;
        bool orientable = true;
        std::vector<int> marks;  // indices into the overlay's mark list
        std::vector<Circle> circles;
        int corner_classes = 0;
        int glued_pairs = 0;
    };

    const SurfaceComplex* X = nullptr;
    std::vector<Wall> walls;
    MarkedSet marks;  // scheme punctures + extra points

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<int> he_next;     // next halfedge in face cycle
    std::vector<int> he_face;
    std::vector<int> he_stitch;   // inner boundary halfedge -> partner inner halfedge
    std::vector<Face> faces;
    std::vector<Region> regions;
    std::vector<int> face_region;
    std::vector<int> mark_face;
    // Forward halfedges of each wall in traversal order (cyclic).
    std::vector<std::vector<int>> wall_paths;

    Overlay(const SurfaceComplex& scheme, std::vector<Wall> ws, MarkedSet extra_marks = {})
        : X(&scheme), walls(std::move(ws)) {
        scheme.require_geometric();
        marks = scheme.punctures;
        for (auto& m : extra_marks) marks.push_back(m);
        build();
    }

    static Overlay of_curves(const SurfaceComplex& scheme,
                             std::vector<const CurveEmbedding*> curves,
                             MarkedSet extra_marks = {}) {
        std::vector<Wall> ws;
        for (auto* c : curves) ws.push_back(Wall{c, false, {}});
        return Overlay(scheme, std::move(ws), std::move(extra_marks));
    }

    int he_from(int h) const { return (h & 1) ? edges[h >> 1].v : edges[h >> 1].u; }
    int he_to(int h) const { return (h & 1) ? edges[h >> 1].u : edges[h >> 1].v; }
    int he_twin(int h) const { return h ^ 1; }
    const Edge& he_edge(int h) const { return edges[h >> 1]; }
    Pt he_dir(int h) const { return nodes[he_to(h)].p - nodes[he_from(h)].p; }

    // Number of transversal intersection points between walls i and j (i==j:
    // self-crossings).
    int crossings(int wi, int wj) const {
        int n = 0;
        for (const Node& nd : nodes) {
            if (nd.kind != Node::Kind::Interior || nd.base_point) continue;
            if (nd.wall_degree < 4) continue;
            if (wi == wj) {
                if (nd.walls_here.count(wi) && nd.wall_degree >= 4) ++n;
            } else if (nd.walls_here.count(wi) && nd.walls_here.count(wj)) {
                ++n;
            }
        }
        return n;
    }

    int total_crossings() const {
        int n = 0;
        for (const Node& nd : nodes)
            if (nd.kind == Node::Kind::Interior && !nd.base_point && nd.wall_degree >= 4) ++n;
        return n;
    }

    struct Bigon {
        int region = -1;
        // Arcs in circle order; arc_of[k].wall tells which wall each belongs to.
        Circle::Arc arc0, arc1;
        bool empty = true;  // no marks inside
    };

    // Two-corner disk regions bounded by one arc of wall wi and one of wall wj.
    std::vector<Bigon> bigons(int wi, int wj) const {
        std::vector<Bigon> out;
        for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
            const Region& R = regions[r];
            if (R.chi != 1 || R.circles.size() != 1) continue;
            const Circle& C = R.circles[0];
            if (C.corners != 2 || C.arcs.size() != 2) continue;
            const int w0 = C.arcs[0].wall, w1 = C.arcs[1].wall;
            if (!((w0 == wi && w1 == wj) || (w0 == wj && w1 == wi))) continue;
            // the two corners must be distinct crossings (a disk pinched at a
            // single crossing is not a bigon)
            if (he_to(C.arcs[0].hes.back()) == he_to(C.arcs[1].hes.back())) continue;
            Bigon b;
            b.region = r;
            b.arc0 = C.arcs[0];
            b.arc1 = C.arcs[1];
            b.empty = R.marks.empty();
            out.push_back(std::move(b));
        }
        return out;
    }

    struct Monogon {
        int region = -1;
        Circle::Arc arc;
        bool empty = true;
    };

    std::vector<Monogon> monogons(int wi) const {
        std::vector<Monogon> out;
        for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
            const Region& R = regions[r];
            if (R.chi != 1 || R.circles.size() != 1) continue;
            const Circle& C = R.circles[0];
            if (C.corners != 1 || C.arcs.size() != 1 || C.arcs[0].wall != wi) continue;
            out.push_back({r, C.arcs[0], R.marks.empty()});
        }
        return out;
    }

    // Deterministic certified interior point of a region (inside one of its
    // faces, off every edge).
    MarkedPoint interior_point(int region) const;

    // Face containing an arbitrary interior test point, or -1.
    int face_of_point(int poly, const Pt& p) const;
    int region_of_point(int poly, const Pt& p) const {
        const int f = face_of_point(poly, p);
        return f < 0 ? -1 : faces[f].region;
    }

    // The face left of a wall halfedge belongs to this region.
    int region_left_of(int h) const { return faces[he_face[h]].region; }

  private:
    std::vector<int> edge_partner_;  // boundary edge -> its glued partner edge

    void build();
    void build_edge_partners();
    void check_chi_consistency() const;
    bool cycle_contains(const std::vector<int>& cycle, const Pt& p) const;
    Rat cycle_area2(const std::vector<int>& cycle) const;
    int rotate_germ(int germ, bool cw) const;
    int cross_germ(int germ) const;
    Rat side_param(int side, const Pt& p) const;
};

// ---------------------------------------------------------------------------

inline void Overlay::build() {
    struct RawSeg {
        int poly;
        Pt a, b;
        int wall, pass, seg;  // wall == -1: boundary, seg=side id
        int side = -1;
    };
    std::vector<RawSeg> raw;

    for (std::size_t p = 0; p < X->polygons.size(); ++p) {
        const auto& poly = X->polygons[p];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const int side = X->side_at(static_cast<int>(p), static_cast<int>(i));
            raw.push_back({static_cast<int>(p), poly[i], poly[(i + 1) % poly.size()], -1, -1, -1,
                           side});
        }
    }
    for (int w = 0; w < static_cast<int>(walls.size()); ++w) {
        const CurveEmbedding* c = walls[w].curve;
        c->for_segments([&](SegRef r, const Pt& a, const Pt& b) {
            raw.push_back({c->passes[r.pass].poly, a, b, w, r.pass, r.seg, -1});
        });
    }

    // -- nodes ---------------------------------------------------------------
    std::map<std::pair<int, Pt>, int> node_id;
    auto get_node = [&](int poly, const Pt& p) {
        auto it = node_id.find({poly, p});
        if (it != node_id.end()) return it->second;
        Node nd;
        nd.poly = poly;
        nd.p = p;
        const int id = static_cast<int>(nodes.size());
        node_id.emplace(std::make_pair(poly, p), id);
        nodes.push_back(std::move(nd));
        return id;
    };

    // Pre-register polygon corners and side-crossing points.
    for (std::size_t p = 0; p < X->polygons.size(); ++p) {
        const auto& poly = X->polygons[p];
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const int id = get_node(static_cast<int>(p), poly[i]);
            nodes[id].kind = Node::Kind::PolyCorner;
            nodes[id].corner_v = static_cast<int>(i);
        }
    }
    for (const Wall& w : walls) {
        const CurveEmbedding* c = w.curve;
        if (c->interior_loop) continue;
        for (const Pass& pass : c->passes) {
            int id = get_node(pass.poly, pass.pts.front());
            nodes[id].kind = Node::Kind::OnSide;
            nodes[id].side = pass.enter_side;
            nodes[id].t = pass.enter_t;
            id = get_node(pass.poly, pass.pts.back());
            nodes[id].kind = Node::Kind::OnSide;
            nodes[id].side = pass.exit_side;
            nodes[id].t = pass.exit_t;
        }
    }
    for (const Wall& w : walls)
        for (const auto& [poly, p] : w.base_points) {
            const int id = get_node(poly, p);
            nodes[id].base_point = true;
        }

    // -- intersections -------------------------------------------------------
    const int nraw = static_cast<int>(raw.size());
    std::vector<std::vector<Pt>> splits(nraw);
    auto is_base = [&](int poly, const Pt& p) {
        for (const Wall& w : walls)
            for (const auto& [bp_poly, bp] : w.base_points)
                if (bp_poly == poly && bp == p) return true;
        return false;
    };
    for (int i = 0; i < nraw; ++i) {
        for (int j = i + 1; j < nraw; ++j) {
            if (raw[i].poly != raw[j].poly) continue;
            const bool bi = raw[i].wall < 0, bj = raw[j].wall < 0;
            if (bi && bj) continue;  // boundary edges meet only at corners
            const SegHit h = seg_intersect(raw[i].a, raw[i].b, raw[j].a, raw[j].b);
            if (h.kind == SegSeg::Disjoint) continue;
            if (h.kind == SegSeg::Proper) {
                if (bi || bj)
                    throw err(TopologyError::Kind::NotGeneric,
                              "wall segment crosses a polygon side away from its endpoints");
                splits[i].push_back(h.at);
                splits[j].push_back(h.at);
                continue;
            }
            // Degenerate contact.  Collect the touch points (endpoints of one
            // segment lying on the other).
            std::vector<Pt> contacts;
            auto add_contact = [&](const Pt& q) {
                if (std::find(contacts.begin(), contacts.end(), q) == contacts.end())
                    contacts.push_back(q);
            };
            for (const Pt* q : {&raw[i].a, &raw[i].b})
                if (on_segment_closed(raw[j].a, raw[j].b, *q)) add_contact(*q);
            for (const Pt* q : {&raw[j].a, &raw[j].b})
                if (on_segment_closed(raw[i].a, raw[i].b, *q)) add_contact(*q);
            if (contacts.size() != 1)
                throw err(TopologyError::Kind::NotGeneric,
                          "overlapping collinear segments in overlay");
            const Pt q = contacts.front();
            if (bi || bj) {
                // A wall endpoint resting on a boundary edge must be a
                // registered side-crossing point of that wall.
                const RawSeg& wallseg = bi ? raw[j] : raw[i];
                if (q != wallseg.a && q != wallseg.b)
                    throw err(TopologyError::Kind::NotGeneric,
                              "wall interior touches the polygon boundary");
                auto it = node_id.find({raw[i].poly, q});
                if (it == node_id.end() || nodes[it->second].kind != Node::Kind::OnSide)
                    throw err(TopologyError::Kind::NotGeneric,
                              "wall touches the boundary at an unregistered point");
                splits[bi ? i : j].push_back(q);  // boundary edge splits here
            } else if (raw[i].wall == raw[j].wall) {
                const bool same_pass = raw[i].pass == raw[j].pass;
                const bool endpoint_of_both = (q == raw[i].a || q == raw[i].b) &&
                                              (q == raw[j].a || q == raw[j].b);
                const bool pass_adjacent =
                    same_pass && endpoint_of_both && std::abs(raw[i].seg - raw[j].seg) <= 1;
                const bool loop_wrap =
                    same_pass && endpoint_of_both && walls[raw[i].wall].curve->interior_loop;
                const bool base_junction = endpoint_of_both && is_base(raw[i].poly, q) &&
                                           walls[raw[i].wall].allow_self_crossing;
                if (!pass_adjacent && !loop_wrap && !base_junction)
                    throw err(TopologyError::Kind::NotGeneric,
                              "wall touches itself away from declared base points");
            } else {
                throw err(TopologyError::Kind::NotGeneric,
                          "two walls share a point non-transversally");
            }
        }
    }

    for (int i = 0; i < nraw; ++i) {
        // Marked points may not sit on any segment.
        for (const auto& mp : marks)
            if (mp.poly == raw[i].poly && on_segment_closed(raw[i].a, raw[i].b, mp.p))
                throw err(TopologyError::Kind::NotGeneric, "marked point lies on a segment");
    }

    // -- split segments into edges --------------------------------------------
    wall_paths.assign(walls.size(), {});
    for (int i = 0; i < nraw; ++i) {
        std::vector<Pt> pts = {raw[i].a, raw[i].b};
        for (const Pt& q : splits[i]) pts.push_back(q);
        const Pt dir = raw[i].b - raw[i].a;
        std::sort(pts.begin(), pts.end(), [&](const Pt& u, const Pt& v) {
            return dot(u - raw[i].a, dir) < dot(v - raw[i].a, dir);
        });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            Edge e;
            e.poly = raw[i].poly;
            e.u = get_node(e.poly, pts[k]);
            e.v = get_node(e.poly, pts[k + 1]);
            e.wall = raw[i].wall;
            e.pass = raw[i].pass;
            e.seg = raw[i].seg;
            e.side = raw[i].side;
            const int eid = static_cast<int>(edges.size());
            edges.push_back(e);
            if (e.wall >= 0) wall_paths[e.wall].push_back(2 * eid);  // u->v follows traversal
        }
    }

    // -- germ ordering ---------------------------------------------------------
    const int nhe = 2 * static_cast<int>(edges.size());
    for (int h = 0; h < nhe; ++h) {
        Node& nd = nodes[he_from(h)];
        nd.out.push_back(h);
        if (he_edge(h).wall >= 0) {
            nd.walls_here.insert(he_edge(h).wall);
            nd.wall_degree++;
        }
    }
    for (Node& nd : nodes) {
        std::sort(nd.out.begin(), nd.out.end(), [&](int h1, int h2) {
            return angle_less(he_dir(h1), he_dir(h2));
        });
        for (std::size_t k = 1; k < nd.out.size(); ++k) {
            const Pt d1 = he_dir(nd.out[k - 1]);
            const Pt d2 = he_dir(nd.out[k]);
            if (cross(d1, d2) == 0 && dot(d1, d2) > 0)
                throw err(TopologyError::Kind::NotGeneric, "coincident germs at a node");
        }
    }

    // -- face tracing -----------------------------------------------------------
    he_next.assign(nhe, -1);
    for (int h = 0; h < nhe; ++h) {
        const Node& nd = nodes[he_to(h)];
        const int tw = he_twin(h);
        const int deg = static_cast<int>(nd.out.size());
        int pos = -1;
        for (int k = 0; k < deg; ++k)
            if (nd.out[k] == tw) {
                pos = k;
                break;
            }
        assert(pos >= 0);
        he_next[h] = nd.out[(pos - 1 + deg) % deg];  // cw rotation: faces on the left
    }

    std::vector<int> cycle_of(nhe, -1);
    std::vector<std::vector<int>> cycles;
    for (int h = 0; h < nhe; ++h) {
        if (cycle_of[h] >= 0) continue;
        std::vector<int> cyc;
        int cur = h;
        do {
            cycle_of[cur] = static_cast<int>(cycles.size());
            cyc.push_back(cur);
            cur = he_next[cur];
        } while (cur != h);
        cycles.push_back(std::move(cyc));
    }

    std::vector<Rat> area(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) area[c] = cycle_area2(cycles[c]);

    // positive cycles are faces; negative cycles are holes or chart exteriors
    std::vector<int> cycle_face(cycles.size(), -1);
    he_face.assign(nhe, -1);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (area[c] <= 0) continue;
        Face f;
        f.poly = nodes[he_from(cycles[c][0])].poly;
        f.outer = cycles[c];
        cycle_face[c] = static_cast<int>(faces.size());
        faces.push_back(std::move(f));
    }
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (area[c] > 0) continue;
        // attach to the smallest positive cycle strictly containing it
        const Pt probe = nodes[he_from(cycles[c][0])].p;
        const int poly = nodes[he_from(cycles[c][0])].poly;
        int best = -1;
        for (std::size_t d = 0; d < cycles.size(); ++d) {
            if (area[d] <= 0 || cycle_face[d] < 0) continue;
            if (faces[cycle_face[d]].poly != poly) continue;
            if (!cycle_contains(cycles[d], probe)) continue;
            if (best < 0 || area[d] < area[best]) best = static_cast<int>(d);
        }
        if (best < 0) continue;  // chart exterior: dropped
        faces[cycle_face[best]].holes.push_back(cycles[c]);
        cycle_face[c] = cycle_face[best];
    }
    for (std::size_t c = 0; c < cycles.size(); ++c)
        for (int h : cycles[c]) he_face[h] = cycle_face[c];

    // -- gluing ------------------------------------------------------------------
    // Sub-edges per global side in arrow order, with the inner halfedge.
    const int nsides = X->side_count();
    std::vector<std::vector<std::pair<Rat, int>>> side_subs(nsides);  // (arrow param of lower end, inner he)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (edges[e].wall >= 0) continue;
        const int s = edges[e].side;
        // inner halfedge: direction matching the polygon's ccw boundary
        const auto& sd = X->sides[s];
        const auto& P = X->polygons[sd.poly];
        const Pt ccw_dir = P[(sd.idx + 1) % P.size()] - P[sd.idx];
        const Pt d = nodes[edges[e].v].p - nodes[edges[e].u].p;
        const int inner = (dot(d, ccw_dir) > 0) ? 2 * e : 2 * e + 1;
        // arrow parameter of the from-node of the *arrow-aligned* halfedge
        const Pt from_arrow = X->side_from(s);
        const Pt to_arrow = X->side_to(s);
        const Pt lo_pt = nodes[he_from(inner)].p;
        Rat t_lo = param_on(from_arrow, to_arrow, lo_pt);
        const Rat t_other = param_on(from_arrow, to_arrow, nodes[he_to(inner)].p);
        if (t_other < t_lo) t_lo = t_other;
        side_subs[s].push_back({t_lo, inner});
    }
    for (int s = 0; s < nsides; ++s)
        std::sort(side_subs[s].begin(), side_subs[s].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

    he_stitch.assign(nhe, -1);
    struct GluePair {
        int he1, he2;
        int label;
    };
    std::vector<GluePair> glue_pairs;
    for (int s = 0; s < nsides; ++s) {
        const int t = X->partner(s);
        if (t < s) continue;
        if (side_subs[s].size() != side_subs[t].size())
            throw err(TopologyError::Kind::NotGeneric, "side crossing mismatch across gluing");
        for (std::size_t k = 0; k < side_subs[s].size(); ++k) {
            if (side_subs[s][k].first != side_subs[t][k].first)
                throw err(TopologyError::Kind::NotGeneric,
                          "side crossing parameters mismatch across gluing");
            const int h1 = side_subs[s][k].second;
            const int h2 = side_subs[t][k].second;
            he_stitch[h1] = h2;
            he_stitch[h2] = h1;
            glue_pairs.push_back({h1, h2, X->sides[s].label});
        }
    }

    // -- regions: parity union-find over faces ------------------------------------
    const int nf = static_cast<int>(faces.size());
    std::vector<int> uf(nf), par(nf, 0);
    std::vector<bool> odd(nf, false);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
        int p = 0;
        while (uf[x] != x) {
            p ^= par[x];
            x = uf[x];
        }
        return {x, p};
    };
    for (const auto& gp : glue_pairs) {
        const int f1 = he_face[gp.he1], f2 = he_face[gp.he2];
        if (f1 < 0 || f2 < 0)
            throw err(TopologyError::Kind::NotGeneric, "glued sub-edge borders a dropped face");
        const int bit = X->pair_reversing(X->first_occurrence(gp.label)) ? 1 : 0;
        auto [r1, p1] = find(f1);
        auto [r2, p2] = find(f2);
        if (r1 == r2) {
            if ((p1 ^ p2) != bit) odd[r1] = true;
        } else {
            uf[r1] = r2;
            par[r1] = p1 ^ p2 ^ bit;
            odd[r2] = odd[r2] || odd[r1];
        }
    }

    face_region.assign(nf, -1);
    std::map<int, int> region_of_root;
    for (int f = 0; f < nf; ++f) {
        auto [r, p] = find(f);
        (void)p;
        auto it = region_of_root.find(r);
        if (it == region_of_root.end())
            it = region_of_root.emplace(r, static_cast<int>(region_of_root.size())).first;
        face_region[f] = it->second;
        faces[f].region = it->second;
    }
    regions.assign(region_of_root.size(), {});
    for (int f = 0; f < nf; ++f) regions[face_region[f]].faces.push_back(f);
    for (const auto& [root, rid] : region_of_root) regions[rid].orientable = !odd[root];

    for (const auto& gp : glue_pairs) regions[face_region[he_face[gp.he1]]].glued_pairs++;

    // corner classes -> region
    std::map<int, int> class_region;
    for (const Node& nd : nodes) {
        if (nd.kind != Node::Kind::PolyCorner) continue;
        if (nd.out.empty()) throw err(TopologyError::Kind::NotGeneric, "isolated corner");
        int reg = -1;
        for (int h : nd.out) {
            if (he_face[h] < 0) continue;
            const int r = face_region[he_face[h]];
            if (reg < 0) reg = r;
        }
        const int cls = X->corner_class(nd.poly, nd.corner_v);
        auto it = class_region.find(cls);
        if (it == class_region.end())
            class_region.emplace(cls, reg);
        else if (it->second != reg)
            throw err(TopologyError::Kind::ConstructionFailed,
                      "corner class split across regions");
    }
    for (const auto& [cls, reg] : class_region) {
        (void)cls;
        regions[reg].corner_classes++;
    }

    for (int r = 0; r < static_cast<int>(regions.size()); ++r) {
        Region& R = regions[r];
        int fsum = 0;
        for (int f : R.faces) fsum += 1 - static_cast<int>(faces[f].holes.size());
        R.chi = R.corner_classes - R.glued_pairs + fsum;
    }

    // marks
    mark_face.assign(marks.size(), -1);
    for (std::size_t m = 0; m < marks.size(); ++m) {
        const int f = face_of_point(marks[m].poly, marks[m].p);
        if (f < 0)
            throw err(TopologyError::Kind::NotGeneric, "marked point not inside any face");
        mark_face[m] = f;
        regions[face_region[f]].marks.push_back(static_cast<int>(m));
    }

    // -- boundary circles -----------------------------------------------------------
    // Walk the region boundary by germ rotation around surface points.  The
    // rotation direction flips across orientation-reversing gluings; each
    // traversed wall halfedge carries the side flag telling which of its two
    // faces belongs to the region.
    build_edge_partners();
    std::vector<bool> copy_seen(nhe, false);  // copy id: region_left ? he : twin(he)
    auto copy_id = [&](int he, bool left) { return left ? he : he_twin(he); };
    for (int h0 = 0; h0 < nhe; ++h0) {
        if (he_edge(h0).wall < 0 || he_face[h0] < 0) continue;
        if (copy_seen[copy_id(h0, true)]) continue;
        Circle circ;
        int reg = face_region[he_face[h0]];

        int arrive_germ = he_twin(h0);  // germ at he_to(h0) pointing back
        bool cw = true;
        const int init_germ = arrive_germ;
        const bool init_cw = cw;
        int cur_he = h0;
        bool cur_left = true;
        while (true) {
            copy_seen[copy_id(cur_he, cur_left)] = true;
            circ.steps.push_back({cur_he, cur_left, false});
            circ.walls.insert(he_edge(cur_he).wall);
            // rotate around the surface point at the end of cur_he
            int germ = arrive_germ;
            while (true) {
                germ = rotate_germ(germ, cw);
                if (he_edge(germ).wall >= 0) break;
                // cross the gluing: continue rotating at the partner germ
                const int s = he_edge(germ).side;
                germ = cross_germ(germ);
                if (X->pair_reversing(s)) cw = !cw;
            }
            cur_he = germ;           // traversal direction: away from the point
            cur_left = cw;           // swept face lies left of germ iff cw
            arrive_germ = he_twin(germ);
            if (arrive_germ == init_germ && cw == init_cw) break;
        }

        for (std::size_t k = 0; k < circ.steps.size(); ++k) {
            const Node& nd = nodes[he_to(circ.steps[k].he)];
            const bool corner =
                nd.kind == Node::Kind::Interior && (nd.wall_degree >= 4 || nd.base_point);
            circ.steps[k].corner_after = corner;
            if (corner) circ.corners++;
        }
        if (circ.corners == 0) {
            Circle::Arc arc;
            arc.wall = he_edge(circ.steps[0].he).wall;
            for (const auto& st : circ.steps) {
                arc.hes.push_back(st.he);
                arc.region_left.push_back(st.region_left);
            }
            circ.arcs.push_back(std::move(arc));
        } else {
            std::size_t start = 0;
            for (std::size_t k = 0; k < circ.steps.size(); ++k)
                if (circ.steps[k].corner_after) start = (k + 1) % circ.steps.size();
            Circle::Arc arc;
            for (std::size_t i = 0; i < circ.steps.size(); ++i) {
                const auto& st = circ.steps[(start + i) % circ.steps.size()];
                if (arc.hes.empty()) arc.wall = he_edge(st.he).wall;
                arc.hes.push_back(st.he);
                arc.region_left.push_back(st.region_left);
                if (st.corner_after) {
                    circ.arcs.push_back(std::move(arc));
                    arc = Circle::Arc{};
                }
            }
            assert(arc.hes.empty());
        }
        regions[reg].circles.push_back(std::move(circ));
    }

    check_chi_consistency();
}

inline int Overlay::rotate_germ(int germ, bool cw) const {
    const Node& nd = nodes[he_from(germ)];
    const int deg = static_cast<int>(nd.out.size());
    int pos = -1;
    for (int k = 0; k < deg; ++k)
        if (nd.out[k] == germ) {
            pos = k;
            break;
        }
    assert(pos >= 0);
    return nd.out[((pos + (cw ? -1 : 1)) % deg + deg) % deg];
}

inline void Overlay::build_edge_partners() {
    edge_partner_.assign(edges.size(), -1);
    const int nsides = X->side_count();
    std::vector<std::vector<std::pair<Rat, int>>> subs(nsides);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (edges[e].wall >= 0) continue;
        const int s = edges[e].side;
        Rat t1 = side_param(s, nodes[edges[e].u].p);
        Rat t2 = side_param(s, nodes[edges[e].v].p);
        subs[s].push_back({t1 < t2 ? t1 : t2, e});
    }
    for (int s = 0; s < nsides; ++s)
        std::sort(subs[s].begin(), subs[s].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int s = 0; s < nsides; ++s) {
        const int t = X->partner(s);
        if (t < s) continue;
        if (subs[s].size() != subs[t].size())
            throw err(TopologyError::Kind::ConstructionFailed, "sub-edge mismatch");
        for (std::size_t k = 0; k < subs[s].size(); ++k) {
            edge_partner_[subs[s][k].second] = subs[t][k].second;
            edge_partner_[subs[t][k].second] = subs[s][k].second;
        }
    }
}

inline Rat Overlay::side_param(int side, const Pt& p) const {
    return param_on(X->side_from(side), X->side_to(side), p);
}

inline int Overlay::cross_germ(int germ) const {
    // germ: halfedge on a boundary edge pointing away from its from-node.
    const Edge& e = he_edge(germ);
    const int ep = edge_partner_[germ >> 1];
    if (ep < 0) throw err(TopologyError::Kind::ConstructionFailed, "unpartnered boundary edge");
    const Rat t_from = side_param(e.side, nodes[he_from(germ)].p);
    const Edge& pe = edges[ep];
    const int sp = pe.side;
    const Rat tu = side_param(sp, nodes[pe.u].p);
    if (tu == t_from) return 2 * ep;      // u -> v germ at u
    const Rat tv = side_param(sp, nodes[pe.v].p);
    if (tv == t_from) return 2 * ep + 1;  // v -> u germ at v
    throw err(TopologyError::Kind::ConstructionFailed, "gluing parameter mismatch at germ");
}

inline Rat Overlay::cycle_area2(const std::vector<int>& cycle) const {
    Rat a = 0;
    for (int h : cycle) a += cross(nodes[he_from(h)].p, nodes[he_to(h)].p);
    return a;
}

inline bool Overlay::cycle_contains(const std::vector<int>& cycle, const Pt& p) const {
    // crossing-number test against the cycle's node polyline
    bool inside = false;
    for (int h : cycle) {
        const Pt& u = nodes[he_from(h)].p;
        const Pt& v = nodes[he_to(h)].p;
        if (on_segment_closed(u, v, p)) return false;
        const bool uy = u.y > p.y, vy = v.y > p.y;
        if (uy == vy) continue;
        const Rat xcut = u.x + (p.y - u.y) / (v.y - u.y) * (v.x - u.x);
        if (xcut > p.x) inside = !inside;
    }
    return inside;
}

inline int Overlay::face_of_point(int poly, const Pt& p) const {
    int best = -1;
    Rat best_area;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (faces[f].poly != poly) continue;
        if (!cycle_contains(faces[f].outer, p)) continue;
        bool in_hole = false;
        for (const auto& hole : faces[f].holes)
            if (cycle_contains(hole, p)) {
                in_hole = true;
                break;
            }
        if (in_hole) continue;
        const Rat a = cycle_area2(faces[f].outer);
        if (best < 0 || a < best_area) {
            best = f;
            best_area = a;
        }
    }
    return best;
}

inline MarkedPoint Overlay::interior_point(int region) const {
    const Region& R = regions[region];
    for (int f : R.faces) {
        const auto& cyc = faces[f].outer;
        // lexicographically smallest node of the outer cycle is convex
        int vpos = 0;
        for (std::size_t k = 1; k < cyc.size(); ++k)
            if (nodes[he_from(cyc[k])].p < nodes[he_from(cyc[vpos])].p) vpos = static_cast<int>(k);
        const int n = static_cast<int>(cyc.size());
        const Pt v = nodes[he_from(cyc[vpos])].p;
        const Pt u = nodes[he_from(cyc[(vpos - 1 + n) % n])].p;
        const Pt w = nodes[he_to(cyc[vpos])].p;
        Pt cand((u.x + v.x + w.x) / 3, (u.y + v.y + w.y) / 3);
        for (int iter = 0; iter < 80; ++iter) {
            if (face_of_point(faces[f].poly, cand) == f) {
                bool on_edge = false;
                for (const auto& e : edges) {
                    if (e.poly != faces[f].poly) continue;
                    if (on_segment_closed(nodes[e.u].p, nodes[e.v].p, cand)) {
                        on_edge = true;
                        break;
                    }
                }
                if (!on_edge) return {faces[f].poly, cand};
            }
            cand = Pt(v.x + (cand.x - v.x) / 2, v.y + (cand.y - v.y) / 2);
        }
    }
    throw err(TopologyError::Kind::ConstructionFailed, "no certified interior point found");
}

inline void Overlay::check_chi_consistency() const {
    // Sum of region chis plus chi of the wall graph must equal the chi of the
    // closed complex.
    int wall_vertices = 0, wall_edges = 0, onside = 0;
    for (const Node& nd : nodes) {
        if (nd.kind == Node::Kind::OnSide)
            ++onside;
        else if (nd.wall_degree > 0)
            ++wall_vertices;
    }
    wall_vertices += onside / 2;
    for (const Edge& e : edges)
        if (e.wall >= 0) ++wall_edges;
    int chi_sum = 0;
    for (const Region& R : regions) chi_sum += R.chi;
    const int chi_walls = wall_vertices - wall_edges;
    if (!walls.empty() && chi_sum + chi_walls != X->complex_chi())
        throw err(TopologyError::Kind::ConstructionFailed,
                  "Euler characteristic bookkeeping failed: regions " + std::to_string(chi_sum) +
                      " + walls " + std::to_string(chi_walls) +
                      " != " + std::to_string(X->complex_chi()));
    if (walls.empty() && chi_sum != X->complex_chi())
        throw err(TopologyError::Kind::ConstructionFailed, "empty overlay chi mismatch");
}

}  // namespace crosscap
