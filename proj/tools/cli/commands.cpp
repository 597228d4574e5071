#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spec_file.hpp"

namespace tangential::cli {

namespace {

void print_certificate(const Certificate& cert, std::ostream& log) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << std::setw(6) << "order" << std::setw(16) << "max_abs_error" << std::setw(14) << "max_ratio" << std::setw(12)
     << "worst_x" << '\n';
  for (const auto& d : cert.derivatives) {
    os << std::setw(6) << d.order << std::setw(16) << d.max_abs_error << std::setw(14) << d.max_ratio << std::setw(12)
       << d.worst_x << '\n';
  }
  os << "max node residual   " << cert.max_node_residual << '\n';
  os << "max moment residual " << cert.max_moment_residual << '\n';
  os << (cert.pass ? "PASS" : "FAIL") << '\n';
  log << os.str();
}

// The stored g, after checking the artifact was made for this spec.
Polynomial artifact_polynomial(const nlohmann::json& art, const ApproximationSpec& spec) {
  if (!art.is_object() || !art.contains("g") || !art.contains("m")) {
    throw SpecError("artifact lacks \"g\" or \"m\"");
  }
  if (art["m"] != spec.m) {
    throw SpecError("artifact was built with m = " + art["m"].dump() + " but the spec has m = " +
                    std::to_string(spec.m));
  }
  if (!spec.compact && art.contains("K") && art["K"] != spec.K) {
    throw SpecError("artifact was built with K = " + art["K"].dump() + " but the spec has K = " +
                    std::to_string(spec.K));
  }
  return polynomial_from_json(art["g"]);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace

int run_approximate(const std::filesystem::path& spec_path, const std::filesystem::path& out, std::ostream& log,
                    std::ostream& err) {
  return guarded(err, [&] {
    ApproximationSpec spec = load_spec(spec_path);
    Artifact art = approximate(spec);
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out.string());
    file << to_json(art).dump(2) << '\n';
    if (!file) throw std::runtime_error("write to " + out.string() + " failed");
    for (const auto& st : art.stages) {
      log << "stage " << st.k << ": degree " << st.degree << ", budget " << st.budget << '\n';
    }
    print_certificate(art.certificate, log);
    return art.certificate.pass ? kPass : kCertificationFailure;
  });
}

int run_certify(const std::filesystem::path& artifact, const std::filesystem::path& spec_path, std::ostream& log,
                std::ostream& err) {
  return guarded(err, [&] {
    ApproximationSpec spec = load_spec(spec_path);
    Polynomial g = artifact_polynomial(read_json(artifact), spec);
    Certificate cert = certify(g, spec, spec.grid_per_unit);
    print_certificate(cert, log);
    return cert.pass ? kPass : kCertificationFailure;
  });
}

int run_dump(const std::filesystem::path& artifact, const std::filesystem::path& spec_path,
             const std::filesystem::path& csv, int deriv, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    ApproximationSpec spec = load_spec(spec_path);
    if (deriv < 0 || deriv > spec.m) {
      throw std::out_of_range("--deriv must be in 0.." + std::to_string(spec.m) + " (got " + std::to_string(deriv) +
                              ")");
    }
    Polynomial g = derivative(artifact_polynomial(read_json(artifact), spec), deriv);
    Expr f = derivatives(spec.f, deriv).back();

    std::ofstream file(csv);
    if (!file) throw std::runtime_error("cannot write " + csv.string());
    file << std::setprecision(17);
    file << "x,f_re,f_im,g_re,g_im,eps,abs_err\n";
    const std::vector<double> xs = certification_grid(spec, spec.grid_per_unit);
    for (double x : xs) {
      Complex fv = evaluate(f, x);
      Complex gv = eval(g, x);
      file << x << ',' << fv.real() << ',' << fv.imag() << ',' << gv.real() << ',' << gv.imag() << ','
           << envelope_at(spec, x) << ',' << std::abs(fv - gv) << '\n';
    }
    if (!file) throw std::runtime_error("write to " + csv.string() + " failed");
    log << "wrote " << xs.size() << " rows to " << csv.string() << '\n';
    return kPass;
  });
}

}  // namespace tangential::cli
