#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace moebius {

/// Lattice site, 1-based: n in 1..2N along the wire, m in 1..M across wires.
struct SiteCoord {
  int n = 1;
  int m = 1;

  auto operator<=>(const SiteCoord&) const = default;
};

enum class EdgeKind { Longitudinal, Transverse, Twist };
enum class Topology { Moebius, Cylinder };

std::string_view to_string(EdgeKind kind);
std::string_view to_string(Topology topology);

/// Bond between two sites. Longitudinal edges are oriented a -> b along
/// increasing n (with wraparound); the orientation carries the flux phase.
struct Edge {
  EdgeKind kind = EdgeKind::Longitudinal;
  SiteCoord a;
  SiteCoord b;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  SiteCoord site;
  EdgeKind kind = EdgeKind::Longitudinal;

  bool operator==(const Neighbor&) const = default;
};

/// M rings of 2N sites, coupled transversely between adjacent wires. In the
/// Moebius topology the last wire is additionally coupled to itself with
/// antipodal chords (n, M) -- (n + N, M), which is where the strip's
/// (n, M + 1) neighbour lands after the half twist.
///
/// Immutable once built.
class Lattice {
 public:
  int half_length() const { return half_length_; }
  int wires() const { return wires_; }
  int ring_length() const { return 2 * half_length_; }
  std::size_t site_count() const {
    return static_cast<std::size_t>(ring_length()) * static_cast<std::size_t>(wires_);
  }
  Topology topology() const { return topology_; }
  std::span<const Edge> edges() const { return edges_; }

  bool contains(SiteCoord s) const;

  /// Wire-major flat index (m - 1) * 2N + (n - 1). Throws std::domain_error
  /// for coordinates outside the lattice.
  std::size_t site_index(SiteCoord s) const;
  SiteCoord site_at(std::size_t index) const;

  /// One entry per incident edge, so the doubled bond of the N = 1 ring
  /// shows up twice.
  std::span<const Neighbor> neighbors(SiteCoord s) const;

  std::size_t count(EdgeKind kind) const;

 private:
  friend Lattice build_moebius(int, int);
  friend Lattice build_cylinder(int, int);

  Lattice(int half_length, int wires, Topology topology);

  int half_length_;
  int wires_;
  Topology topology_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Edge order: longitudinal by (m, n), transverse by (m, n), twist by n.
Lattice build_moebius(int half_length, int wires);
Lattice build_cylinder(int half_length, int wires);

/// CSV with header `kind,n1,m1,n2,m2`.
std::string to_csv(const Lattice& lattice);
/// Undirected graphviz text; node names are "n,m".
std::string to_dot(const Lattice& lattice);

}  // namespace moebius
