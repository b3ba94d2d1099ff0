#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dcmap/painleve.hpp"
#include "dcmap/radii.hpp"

namespace dcmap {

/// {"kind": "zc"|"z2"|"log", "c": number, "size": integer,
///  "values": [[[re, im] | "inf", ...], ...]} with values[n][m] = f(n,m).
/// Doubles are written in shortest round-trip form.
std::string lattice_to_json(const ConformalLattice& lat);
/// Throws Parse on malformed input.
ConformalLattice lattice_from_json(std::string_view text);

/// Header N,M,R; one row per stored label, "inf" for a line.
std::string radii_to_csv(const RadiusField& field);
RadiusField radii_from_csv(std::string_view text, double c, int lattice_size);

/// Header n,alpha,residual. The residual is empty at n = 0 and n = steps.
std::string painleve_to_csv(const PainleveSolution& sol);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dcmap
