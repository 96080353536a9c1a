#include "gcb/engine.hpp"

namespace gcb {

namespace {

struct Example {
  const char* name;
  const char* description;
  const char* text;
};

const Example kExamples[] = {
    {"contact_r3", "standard contact structure on R^3 as a triple with phi = 0",
     R"(# standard contact structure dz - y dx on R^3
[manifold]
coords = x, y, z

[theta]
c_2 = 1
c_0 = -y

[phi]

[J]
lambda_0_1 = -1
lambda_1_2 = y
E_2 = -1

[omega]
w0_0_1 = -1
w1_0 = y
w1_2 = -1
)"},
    {"contact_r1", "contact structure dt on the line",
     R"(# contact structure dt on R^1
[manifold]
coords = t

[theta]
c_0 = 1

[phi]

[J]
E_0 = -1

[omega]
w1_0 = -1
)"},
    {"complex_dl_r1", "complex structure of the derivation bundle over the line",
     R"(# extreme case J = omega = 0 with phi a complex structure
[manifold]
coords = x

[phi]
b_0 = -1
xi_0 = 1
)"},
    {"noncoorientable_ptr2", "projectivized cotangent plane in two charts",
     R"(# two contact charts glued by a sign-reversing cocycle
[manifold]
coords = x, y, p

[manifold2]
coords = x2, y2, q

[transition]
to_0 = x
to_1 = y
to_2 = 1/p
kappa = -1/p

[theta]
c_1 = 1
c_0 = -p

[theta2]
c_0 = 1
c_1 = -q
)"},
    {"non_jacobi", "bivector data violating the Jacobi conditions",
     R"(# fails both Jacobi routes; Schouten residual -2 dx^dy^dz
[manifold]
coords = x, y, z

[J]
lambda_0_1 = 1
lambda_0_2 = x
)"},
    {"nonclosed_omega", "almost structure whose 2-form is not closed",
     R"(# passes the almost checks, fails integrability
[manifold]
coords = x, y, z

[phi]

[J]
lambda_0_1 = 1
E_2 = 1

[omega]
w0_0_1 = 1
w1_2 = 1
)"},
    {"pair_groupoid_r", "pair groupoid over the line with a coboundary 1-form",
     R"(# multiplicative coboundary of x^2 on the pair groupoid
[manifold]
coords = x

[groupoid]
type = pair

[gomega]
degree = 1
w0_0 = 2*x
w0_1 = -2*x_s
w1 = x^2 - x_s^2
)"},
    {"bundle_of_groups", "additive bundle of groups over the line",
     R"(# the fiber coordinate is additive under multiplication
[manifold]
coords = x

[groupoid]
type = bundle

[gomega]
degree = 1
w0_1 = 1
w1 = a
)"},
};

}  // namespace

std::vector<std::pair<std::string, std::string>> exampleCatalog() {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& e : kExamples) out.emplace_back(e.name, e.description);
  return out;
}

std::string exampleFile(const std::string& name) {
  for (auto& e : kExamples)
    if (name == e.name) return e.text;
  throw UnknownExample(name);
}

}  // namespace gcb

