#pragma once

#include <string>
#include <vector>

#include "chm/matrix.hpp"

namespace chm {

enum class EntryKind { IsolatedCandidate, AffineFamily, NonlinearFamily };

struct CatalogueEntry {
  std::string id;
  int n = 0;
  int param_count = 0;
  EntryKind kind = EntryKind::IsolatedCandidate;
  // Validation tolerance for is_hadamard; entries built from published
  // 6-digit decimal constants (C7C, C7D) only hold to 1e-4.
  double validation_tol = -1.0;  // -1 = strict default 1e-10*n
  std::string notes;
};

const char* entry_kind_name(EntryKind k);

// Stable index of all catalogue ids.
const std::vector<CatalogueEntry>& catalogue_list();

bool catalogue_has(const std::string& id);
const CatalogueEntry& catalogue_entry(const std::string& id);  // throws UnknownId

// Fourier matrix, phases (i*j)/n turns; exact. Throws for n < 1.
HadamardMatrix fourier(int n);

// Catalogue matrix at the given parameters (radians, one per family
// parameter; empty for parameter-free entries). Every returned matrix is
// dephased and validated against the entry's tolerance.
HadamardMatrix catalogue_get(const std::string& id,
                             const std::vector<double>& params = {});

// Exact-parameter variant; phases stay rational when the base is rational.
HadamardMatrix catalogue_get(const std::string& id,
                             const std::vector<PhaseValue>& params);

// Affine family for a family id. Throws std::invalid_argument for isolated
// entries and for the nonlinear P13 family.
AffineFamily catalogue_family(const std::string& id);

// Circulant (pre-dephasing) form for the cyclic-root ids C6, C7A, C7B, C7C,
// C7D, C11A, C11B, C13A, C13B.
HadamardMatrix circulant_form(const std::string& id);

// Phase correction used by the nonlinear 13-dimensional family:
// arg(-cos(f)/2 + i*(sqrt(2)/4)*sqrt(7 - cos(2f))) - 2*pi/3.
// Satisfies G(0) = 0 and G(pi) = -pi/3.
double petrescu_g(double f);

struct UnknownId : std::invalid_argument {
  explicit UnknownId(const std::string& id)
      : std::invalid_argument("unknown catalogue id: " + id) {}
};

}  // namespace chm
