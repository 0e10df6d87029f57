#include "solder/examples.hpp"

#include <map>

#include "solder/errors.hpp"

namespace solder {

namespace {

const char* kHomogeneousSlice = R"(# A Jacobi pair on a four-variable chart. The slice t = 0 is a Dirac
# submanifold and the structure restricts to a Poisson bivector there.
chart M: u1, q1, p1, t
bivector Lambda on M:
  [q1,p1] = u1
  [t,p1] = t*p1
vector E on M:
  [t] = t
submanifold N in M: normal t = 0
check jacobi Lambda E
check classify-jacobi Lambda E N expect dirac, fieldNormal
check induced Lambda E N expect poisson
)";

const char* kJacobiSlice = R"(# The same Jacobi pair, sliced along u1 = q1 = 0. The slice is Dirac and
# inherits a genuine Jacobi pair: the field t d/dt survives the restriction.
chart M: u1, q1, p1, t
bivector Lambda on M:
  [q1,p1] = u1
  [t,p1] = t*p1
vector E on M:
  [t] = t
submanifold N in M: normal u1 = 0, normal q1 = 0
check classify-jacobi Lambda E N expect dirac
check induced Lambda E N expect jacobi
)";

const char* kInversionLocus = R"(# Fixed locus of the inversion t -> 1/t. Neither the bivector nor the field
# is preserved by the inversion, and the locus t = 1 is quasi Dirac without
# being almost Dirac; the induced structure is still Poisson.
chart M: u1, q1, p1, t(laurent)
bivector Lambda on M:
  [q1,p1] = u1
  [t,p1] = t*p1
vector E on M:
  [t] = t
involution inv on M: t -> t^-1
submanifold N in M: normal t = 1
check jacobi Lambda E
check involution Lambda inv = not-preserved
check involution E inv = not-preserved
check classify-jacobi Lambda E N expect quasiDirac, fieldNormal, !aJc, !almostDirac, !dirac
check induced Lambda E N expect poisson
)";

const char* kSymplecticCanonical = R"(# Canonical symplectic bivector in dimension four. A symplectically
# orthogonal coordinate slice is cosymplectic and strongly Dirac.
chart C: x1, xs1, y1, ys1
bivector Pi on C:
  [x1,xs1] = 1
  [y1,ys1] = 1
submanifold N in C: normal x1 = 0, normal xs1 = 0
check poisson Pi
check classify-poisson Pi N expect cosymplectic, dirac, strongDirac
check induced Pi N expect poisson
)";

const char* kContactDarboux = R"(# Contact form in Darboux coordinates with its Reeb field and bivector,
# checked at the origin, together with its symplectization.
chart D: x, y, z
form theta on D:
  [z] = 1
  [x] = -y
vector E on D:
  [z] = 1
bivector Lambda on D:
  [x,y] = 1
  [y,z] = -y
point o on D:
check contact theta E Lambda at o
check symplectization theta E Lambda at o
)";

const char* kPoissonization = R"(# Homogenization of a contact-type Jacobi pair: an extra variable tau turns
# the pair into a homogeneous Poisson bivector on the extended chart.
chart D: x, y, z
bivector Lambda on D:
  [x,y] = 1
  [y,z] = -y
vector E on D:
  [z] = 1
check jacobi Lambda E
check poissonize Lambda E
)";

struct Example {
  const char* description;
  const char* text;
};

const std::map<std::string, Example>& table() {
  static const std::map<std::string, Example> examples = {
      {"homogeneous-slice",
       {"Jacobi pair with a transversal Dirac slice inducing a Poisson bivector",
        kHomogeneousSlice}},
      {"jacobi-slice",
       {"Dirac slice of a Jacobi pair that inherits a Jacobi structure",
        kJacobiSlice}},
      {"inversion-locus",
       {"fixed locus of t -> 1/t: quasi Dirac but not almost Dirac",
        kInversionLocus}},
      {"symplectic-canonical",
       {"cosymplectic and strongly Dirac slice of a symplectic bivector",
        kSymplecticCanonical}},
      {"contact-darboux",
       {"contact form, Reeb field, and symplectization in Darboux coordinates",
        kContactDarboux}},
      {"poissonization",
       {"homogeneous Poisson bivector built from a Jacobi pair",
        kPoissonization}},
  };
  return examples;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> builtin_example_names() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, ex] : table()) out.push_back({name, ex.description});
  return out;
}

std::string builtin_example(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end())
    throw UnknownExample("no bundled script named '" + name + "'");
  return it->second.text;
}

}  // namespace solder
