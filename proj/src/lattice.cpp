#include "moebius/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace moebius {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Longitudinal: return "longitudinal";
    case EdgeKind::Transverse: return "transverse";
    case EdgeKind::Twist: return "twist";
  }
  return "unknown";
}

std::string_view to_string(Topology topology) {
  return topology == Topology::Moebius ? "moebius" : "cylinder";
}

Lattice::Lattice(int half_length, int wires, Topology topology)
    : half_length_(half_length), wires_(wires), topology_(topology) {
  if (half_length < 1 || wires < 1) {
    throw std::domain_error("lattice: N and M must be positive (got N=" +
                            std::to_string(half_length) + ", M=" + std::to_string(wires) + ")");
  }
  const int ring = ring_length();

  edges_.reserve(site_count() * 2 + static_cast<std::size_t>(half_length));
  for (int m = 1; m <= wires; ++m) {
    for (int n = 1; n <= ring; ++n) {
      edges_.push_back({EdgeKind::Longitudinal, {n, m}, {n % ring + 1, m}});
    }
  }
  for (int m = 1; m < wires; ++m) {
    for (int n = 1; n <= ring; ++n) {
      edges_.push_back({EdgeKind::Transverse, {n, m}, {n, m + 1}});
    }
  }
  if (topology == Topology::Moebius) {
    for (int n = 1; n <= half_length; ++n) {
      edges_.push_back({EdgeKind::Twist, {n, wires}, {n + half_length, wires}});
    }
  }

  adjacency_.resize(site_count());
  for (const Edge& e : edges_) {
    adjacency_[site_index(e.a)].push_back({e.b, e.kind});
    adjacency_[site_index(e.b)].push_back({e.a, e.kind});
  }
}

Lattice build_moebius(int half_length, int wires) {
  return Lattice(half_length, wires, Topology::Moebius);
}

Lattice build_cylinder(int half_length, int wires) {
  return Lattice(half_length, wires, Topology::Cylinder);
}

bool Lattice::contains(SiteCoord s) const {
  return s.n >= 1 && s.n <= ring_length() && s.m >= 1 && s.m <= wires_;
}

std::size_t Lattice::site_index(SiteCoord s) const {
  if (!contains(s)) {
    throw std::domain_error("lattice: site (" + std::to_string(s.n) + "," + std::to_string(s.m) +
                            ") outside 2N=" + std::to_string(ring_length()) +
                            " x M=" + std::to_string(wires_));
  }
  return static_cast<std::size_t>(s.m - 1) * static_cast<std::size_t>(ring_length()) +
         static_cast<std::size_t>(s.n - 1);
}

SiteCoord Lattice::site_at(std::size_t index) const {
  if (index >= site_count()) {
    throw std::domain_error("lattice: flat index " + std::to_string(index) + " out of range");
  }
  const auto ring = static_cast<std::size_t>(ring_length());
  return {static_cast<int>(index % ring) + 1, static_cast<int>(index / ring) + 1};
}

std::span<const Neighbor> Lattice::neighbors(SiteCoord s) const {
  return adjacency_[site_index(s)];
}

std::size_t Lattice::count(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const Edge& e) { return e.kind == kind; }));
}

std::string to_csv(const Lattice& lattice) {
  std::ostringstream out;
  out << "kind,n1,m1,n2,m2\n";
  for (const Edge& e : lattice.edges()) {
    out << to_string(e.kind) << ',' << e.a.n << ',' << e.a.m << ',' << e.b.n << ',' << e.b.m
        << '\n';
  }
  return out.str();
}

std::string to_dot(const Lattice& lattice) {
  std::ostringstream out;
  out << "graph " << to_string(lattice.topology()) << " {\n";
  out << "  // N=" << lattice.half_length() << " M=" << lattice.wires() << "\n";
  for (const Edge& e : lattice.edges()) {
    out << "  \"" << e.a.n << ',' << e.a.m << "\" -- \"" << e.b.n << ',' << e.b.m << '"';
    switch (e.kind) {
      case EdgeKind::Longitudinal: break;
      case EdgeKind::Transverse: out << " [style=dashed]"; break;
      case EdgeKind::Twist: out << " [color=red]"; break;
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace moebius
