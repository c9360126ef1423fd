#include "maxstab/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxstab {

bool is_lorentz(Model m) {
  return m == Model::LorentzJoseph || m == Model::LorentzKashiwa || m == Model::LorentzYoung;
}

const char* to_string(Model m) {
  switch (m) {
    case Model::DebyeJoseph: return "debye-joseph";
    case Model::DebyeYoung: return "debye-young";
    case Model::LorentzJoseph: return "lorentz-joseph";
    case Model::LorentzKashiwa: return "lorentz-kashiwa";
    case Model::LorentzYoung: return "lorentz-young";
  }
  return "?";
}

const char* to_string(Polarization p) {
  switch (p) {
    case Polarization::None: return "none";
    case Polarization::TEz: return "TEz";
    case Polarization::TMz: return "TMz";
  }
  return "?";
}

namespace {
std::string squash(const std::string& s) {
  std::string r;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) r += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}
}  // namespace

std::optional<Model> parse_model(const std::string& s) {
  const std::string k = squash(s);
  if (k == "debyejoseph" || k == "dj") return Model::DebyeJoseph;
  if (k == "debyeyoung" || k == "dy") return Model::DebyeYoung;
  if (k == "lorentzjoseph" || k == "lj") return Model::LorentzJoseph;
  if (k == "lorentzkashiwa" || k == "lk") return Model::LorentzKashiwa;
  if (k == "lorentzyoung" || k == "ly") return Model::LorentzYoung;
  return std::nullopt;
}

std::optional<Polarization> parse_polarization(const std::string& s) {
  const std::string k = squash(s);
  if (k == "tez" || k == "te") return Polarization::TEz;
  if (k == "tmz" || k == "tm") return Polarization::TMz;
  if (k.empty() || k == "none") return Polarization::None;
  return std::nullopt;
}

void SchemeId::validate() const {
  if (dim != 1 && dim != 2) throw std::domain_error("dim must be 1 or 2");
  if (dim == 1 && polarization != Polarization::None)
    throw std::domain_error("polarization is only meaningful for dim = 2");
  if (dim == 2 && polarization == Polarization::None)
    throw std::domain_error("dim = 2 requires polarization TEz or TMz");
}

std::string SchemeId::label() const {
  std::string s = to_string(model);
  s += dim == 1 ? " 1D" : std::string(" 2D ") + to_string(polarization);
  return s;
}

void SchemeParams::validate(const SchemeId& id) const {
  id.validate();
  if (!(lambda_x > 0.0)) throw std::domain_error("lambda_x must be > 0");
  if (id.dim == 2 && !(lambda_y > 0.0)) throw std::domain_error("lambda_y must be > 0 in 2D");
  if (!(delta >= 0.0)) throw std::domain_error("delta must be >= 0");
  if (!(omega >= 0.0)) throw std::domain_error("omega must be >= 0");
  if (!(eps_s_rel >= 1.0)) throw std::domain_error("eps_s_rel must be >= 1");
  if (!is_lorentz(id.model) && omega != 0.0) throw std::domain_error("omega must be 0 for Debye models");
}

ModeQuantities mode_quantities(const SchemeId& id, const SchemeParams& sp, const Mode& m) {
  ModeQuantities r;
  r.sigma_x = sp.lambda_x * (std::polar(1.0, m.xi_x) - 1.0);
  r.q_x = std::norm(r.sigma_x);
  if (id.dim == 2) {
    r.sigma_y = sp.lambda_y * (std::polar(1.0, m.xi_y) - 1.0);
    r.q_y = std::norm(r.sigma_y);
  }
  r.q = r.q_x + r.q_y;
  return r;
}

double q_max(const SchemeId& id, const SchemeParams& sp) {
  double l2 = sp.lambda_x * sp.lambda_x;
  if (id.dim == 2) l2 += sp.lambda_y * sp.lambda_y;
  return 4.0 * l2;
}

namespace {
double xi_for(double q, double lambda) {
  const double s = std::clamp(std::sqrt(std::max(q, 0.0)) / (2.0 * lambda), 0.0, 1.0);
  return 2.0 * std::asin(s);
}
}  // namespace

Mode mode_for_q(const SchemeId& id, const SchemeParams& sp, double q) {
  Mode m;
  if (id.dim == 1) {
    m.xi_x = xi_for(q, sp.lambda_x);
    return m;
  }
  const double lx2 = sp.lambda_x * sp.lambda_x;
  const double ly2 = sp.lambda_y * sp.lambda_y;
  m.xi_x = xi_for(q * lx2 / (lx2 + ly2), sp.lambda_x);
  m.xi_y = xi_for(q * ly2 / (lx2 + ly2), sp.lambda_y);
  return m;
}

double light_speed_inf(const PhysicalParams& p) { return 1.0 / std::sqrt(p.eps0 * p.eps_inf * p.mu0); }

SchemeParams to_dimensionless(const PhysicalParams& p, Model model) {
  if (!(p.eps0 > 0.0)) throw std::domain_error("eps0 must be > 0");
  if (!(p.mu0 > 0.0)) throw std::domain_error("mu0 must be > 0");
  if (!(p.eps_inf > 0.0)) throw std::domain_error("eps_inf must be > 0");
  if (!(p.eps_s >= p.eps_inf)) throw std::domain_error("eps_s must be >= eps_inf");
  if (!(p.dt > 0.0)) throw std::domain_error("dt must be > 0");
  if (!(p.dx > 0.0)) throw std::domain_error("dx must be > 0");
  if (p.dy < 0.0) throw std::domain_error("dy must be > 0 when given");
  const double c = light_speed_inf(p);
  SchemeParams sp;
  sp.lambda_x = c * p.dt / p.dx;
  sp.lambda_y = p.dy > 0.0 ? c * p.dt / p.dy : 0.0;
  sp.eps_s_rel = p.eps_s / p.eps_inf;
  if (is_lorentz(model)) {
    if (!(p.nu >= 0.0)) throw std::domain_error("nu must be >= 0");
    if (!(p.omega1 > 0.0)) throw std::domain_error("omega1 must be > 0");
    sp.delta = p.nu * p.dt / 2.0;
    sp.omega = p.omega1 * p.omega1 * p.dt * p.dt / 2.0;
  } else {
    if (!(p.t_r > 0.0)) throw std::domain_error("t_r must be > 0");
    sp.delta = p.dt / (2.0 * p.t_r);
    sp.omega = 0.0;
  }
  return sp;
}

int state_size(const SchemeId& id) {
  const bool lor = is_lorentz(id.model);
  if (id.dim == 1) return lor ? 4 : 3;
  if (id.polarization == Polarization::TEz) return lor ? 5 : 4;
  return lor ? 7 : 5;
}

std::vector<std::string> state_labels(const SchemeId& id) {
  const Model m = id.model;
  // Matter variables following E in each scheme.
  std::vector<std::string> tail;
  switch (m) {
    case Model::DebyeJoseph: tail = {"D"}; break;
    case Model::DebyeYoung: tail = {"P"}; break;
    case Model::LorentzJoseph: tail = {"E_prev", "D"}; break;
    case Model::LorentzKashiwa: tail = {"P", "J"}; break;
    case Model::LorentzYoung: tail = {"P", "J_half"}; break;
  }
  std::vector<std::string> out;
  auto component = [&](const std::string& axis) {
    out.push_back("E" + axis);
    for (const auto& t : tail) out.push_back(t + axis);
  };
  if (id.dim == 1) {
    out.push_back("B");
    component("");
  } else if (id.polarization == Polarization::TEz) {
    out.push_back("Bx");
    out.push_back("By");
    component("z");
  } else {
    out.push_back("Bz");
    component("x");
    component("y");
  }
  return out;
}

namespace {

using Row = std::vector<cplx>;

CMatrix from_rows(const std::vector<Row>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<cplx> e;
  e.reserve(static_cast<std::size_t>(n * n));
  for (const Row& r : rows) {
    if (static_cast<int>(r.size()) != n) throw std::logic_error("amplification matrix row has wrong length");
    e.insert(e.end(), r.begin(), r.end());
  }
  return CMatrix(n, std::move(e));
}

CMatrix g_1d(Model model, const SchemeParams& sp, cplx s, double q) {
  const double d = sp.delta, w = sp.omega, e = sp.eps_s_rel, a = sp.alpha();
  const cplx sc = std::conj(s);
  switch (model) {
    case Model::DebyeJoseph: {
      const double k = 1 + d * e;
      return from_rows({{1.0, -s, 0.0},
                        {(1 + d) * sc / k, ((1 - d * e) - (1 + d) * q) / k, 2 * d / k},
                        {sc, -q, 1.0}});
    }
    case Model::DebyeYoung: {
      const double k = 1 + d * a;
      return from_rows({{1.0, -s, 0.0},
                        {sc / k, ((1 + d) * (1 - d * a) + 4 * d * d * a - (1 + d) * q) / ((1 + d) * k),
                         (1 - d) / (1 + d) * 2 * d / k},
                        {0.0, 2 * d * a / (1 + d), (1 - d) / (1 + d)}});
    }
    case Model::LorentzJoseph: {
      const double k = 1 + d + w * e;
      return from_rows({{1.0, -s, 0.0, 0.0},
                        {2 * d * sc / k, (2 - q * (1 + d + w)) / k, -(1 - d + w * e) / k, 2 * w / k},
                        {0.0, 1.0, 0.0, 0.0},
                        {sc, -q, 0.0, 1.0}});
    }
    case Model::LorentzKashiwa: {
      const double D = 1 + d + 0.5 * w * e;
      const double h = 0.5 * w * a;
      return from_rows({{1.0, -s, 0.0, 0.0},
                        {sc * (D - h) / D, ((1 - q) * D - (2 - q) * h) / D, w / D, -1 / D},
                        {sc * h / D, (2 - q) * h / D, (D - w) / D, 1 / D},
                        {sc * w * a / D, (2 - q) * w * a / D, -2 * w / D, (2 - D) / D}});
    }
    case Model::LorentzYoung: {
      const double k = 1 + d;
      return from_rows({{1.0, -s, 0.0, 0.0},
                        {sc, ((1 - q) * k - 2 * w * a) / k, 2 * w / k, -(1 - d) / k},
                        {0.0, 2 * w * a / k, (k - 2 * w) / k, (1 - d) / k},
                        {0.0, 2 * w * a / k, -2 * w / k, (1 - d) / k}});
    }
  }
  throw std::logic_error("unknown model");
}

CMatrix g_te(Model model, const SchemeParams& sp, const ModeQuantities& mq) {
  const double d = sp.delta, w = sp.omega, e = sp.eps_s_rel, a = sp.alpha();
  const cplx sx = mq.sigma_x, sy = mq.sigma_y;
  const cplx sxc = std::conj(sx), syc = std::conj(sy);
  const double q = mq.q;
  switch (model) {
    case Model::DebyeJoseph: {
      const double k = 1 + d * e;
      return from_rows({{1.0, 0.0, -sy, 0.0},
                        {0.0, 1.0, sx, 0.0},
                        {(1 + d) * syc / k, -(1 + d) * sxc / k, ((1 - d * e) - (1 + d) * q) / k, 2 * d / k},
                        {syc, -sxc, -q, 1.0}});
    }
    case Model::DebyeYoung: {
      const double k = 1 + d * a;
      return from_rows({{1.0, 0.0, -sy, 0.0},
                        {0.0, 1.0, sx, 0.0},
                        {syc / k, -sxc / k, ((1 + d) * (1 - d * a) + 4 * d * d * a - (1 + d) * q) / ((1 + d) * k),
                         (1 - d) / (1 + d) * 2 * d / k},
                        {0.0, 0.0, 2 * d * a / (1 + d), (1 - d) / (1 + d)}});
    }
    case Model::LorentzJoseph: {
      const double k = 1 + d + w * e;
      return from_rows({{1.0, 0.0, -sy, 0.0, 0.0},
                        {0.0, 1.0, sx, 0.0, 0.0},
                        {2 * d * syc / k, -2 * d * sxc / k, (2 - (1 + d + w) * q) / k, -(1 - d + w * e) / k, 2 * w / k},
                        {0.0, 0.0, 1.0, 0.0, 0.0},
                        {syc, -sxc, -q, 0.0, 1.0}});
    }
    case Model::LorentzKashiwa: {
      const double D = 1 + d + 0.5 * w * e;
      const double h = 0.5 * w * a;
      return from_rows({{1.0, 0.0, -sy, 0.0, 0.0},
                        {0.0, 1.0, sx, 0.0, 0.0},
                        {syc * (D - h) / D, -sxc * (D - h) / D, ((1 - q) * D - (2 - q) * h) / D, w / D, -1 / D},
                        {syc * h / D, -sxc * h / D, (2 - q) * h / D, (D - w) / D, 1 / D},
                        {syc * w * a / D, -sxc * w * a / D, (2 - q) * w * a / D, -2 * w / D, (2 - D) / D}});
    }
    case Model::LorentzYoung: {
      const double k = 1 + d;
      return from_rows({{1.0, 0.0, -sy, 0.0, 0.0},
                        {0.0, 1.0, sx, 0.0, 0.0},
                        {syc, -sxc, (k * (1 - q) - 2 * w * a) / k, 2 * w / k, -(1 - d) / k},
                        {0.0, 0.0, 2 * w * a / k, (k - 2 * w) / k, (1 - d) / k},
                        {0.0, 0.0, 2 * w * a / k, -2 * w / k, (1 - d) / k}});
    }
  }
  throw std::logic_error("unknown model");
}

CMatrix g_tm(Model model, const SchemeParams& sp, const ModeQuantities& mq) {
  const double d = sp.delta, w = sp.omega, e = sp.eps_s_rel, a = sp.alpha();
  const cplx sx = mq.sigma_x, sy = mq.sigma_y;
  const cplx sxc = std::conj(sx), syc = std::conj(sy);
  const double qx = mq.q_x, qy = mq.q_y;
  const cplx xy = sx * syc;  // sigma_x sigma_y^*
  const cplx yx = sxc * sy;  // sigma_x^* sigma_y
  switch (model) {
    case Model::DebyeJoseph: {
      const double k = 1 + d * e;
      return from_rows({{1.0, sy, 0.0, -sx, 0.0},
                        {-(1 + d) * syc / k, ((1 - d * e) - (1 + d) * qy) / k, 2 * d / k, (1 + d) * xy / k, 0.0},
                        {-syc, -qy, 1.0, xy, 0.0},
                        {(1 + d) * sxc / k, (1 + d) * yx / k, 0.0, ((1 - d * e) - (1 + d) * qx) / k, 2 * d / k},
                        {sxc, yx, 0.0, -qx, 1.0}});
    }
    case Model::DebyeYoung: {
      const double k = 1 + d * a;
      auto ee = [&](double qq) { return ((1 + d) * (1 - d * a) + 4 * d * d * a - (1 + d) * qq) / ((1 + d) * k); };
      const double ep = (1 - d) / (1 + d) * 2 * d / k;
      const double pe = 2 * d * a / (1 + d);
      const double pp = (1 - d) / (1 + d);
      return from_rows({{1.0, sy, 0.0, -sx, 0.0},
                        {-syc / k, ee(qy), ep, xy / k, 0.0},
                        {0.0, pe, pp, 0.0, 0.0},
                        {sxc / k, yx / k, 0.0, ee(qx), ep},
                        {0.0, 0.0, 0.0, pe, pp}});
    }
    case Model::LorentzJoseph: {
      const double k = 1 + d + w * e;
      const double c = 1 + d + w;
      const double m = -(1 - d + w * e) / k;
      return from_rows({{1.0, sy, 0.0, 0.0, -sx, 0.0, 0.0},
                        {-2 * d * syc / k, (2 - c * qy) / k, m, 2 * w / k, xy * c / k, 0.0, 0.0},
                        {0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0},
                        {-syc, -qy, 0.0, 1.0, xy, 0.0, 0.0},
                        {2 * d * sxc / k, yx * c / k, 0.0, 0.0, (2 - c * qx) / k, m, 2 * w / k},
                        {0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0},
                        {sxc, yx, 0.0, 0.0, -qx, 0.0, 1.0}});
    }
    case Model::LorentzKashiwa: {
      // B_z enters with the opposite sign convention to the other TM_z matrices.
      const double D = 1 + d + 0.5 * w * e;
      const double h = 0.5 * w * a;
      const double g = D - h;
      return from_rows(
          {{1.0, -sy, 0.0, 0.0, sx, 0.0, 0.0},
           {syc * g / D, ((1 - qy) * D - (2 - qy) * h) / D, w / D, -1 / D, xy * g / D, 0.0, 0.0},
           {syc * h / D, (2 - qy) * h / D, (D - w) / D, 1 / D, xy * h / D, 0.0, 0.0},
           {syc * w * a / D, (2 - qy) * w * a / D, -2 * w / D, (2 - D) / D, xy * w * a / D, 0.0, 0.0},
           {-sxc * g / D, yx * g / D, 0.0, 0.0, ((1 - qx) * D - (2 - qx) * h) / D, w / D, -1 / D},
           {-sxc * h / D, yx * h / D, 0.0, 0.0, (2 - qx) * h / D, (D - w) / D, 1 / D},
           {-sxc * w * a / D, yx * w * a / D, 0.0, 0.0, (2 - qx) * w * a / D, -2 * w / D, (2 - D) / D}});
    }
    case Model::LorentzYoung: {
      const double k = 1 + d;
      return from_rows({{1.0, sy, 0.0, 0.0, -sx, 0.0, 0.0},
                        {-syc, (k * (1 - qy) - 2 * w * a) / k, 2 * w / k, -(1 - d) / k, xy, 0.0, 0.0},
                        {0.0, 2 * w * a / k, (k - 2 * w) / k, (1 - d) / k, 0.0, 0.0, 0.0},
                        {0.0, 2 * w * a / k, -2 * w / k, (1 - d) / k, 0.0, 0.0, 0.0},
                        {sxc, yx, 0.0, 0.0, (k * (1 - qx) - 2 * w * a) / k, 2 * w / k, -(1 - d) / k},
                        {0.0, 0.0, 0.0, 0.0, 2 * w * a / k, (k - 2 * w) / k, (1 - d) / k},
                        {0.0, 0.0, 0.0, 0.0, 2 * w * a / k, -2 * w / k, (1 - d) / k}});
    }
  }
  throw std::logic_error("unknown model");
}

}  // namespace

CMatrix build_G(const SchemeId& id, const SchemeParams& sp, const Mode& m) {
  sp.validate(id);
  const ModeQuantities mq = mode_quantities(id, sp, m);
  if (id.dim == 1) return g_1d(id.model, sp, mq.sigma_x, mq.q);
  if (id.polarization == Polarization::TEz) return g_te(id.model, sp, mq);
  return g_tm(id.model, sp, mq);
}

CPoly basic_poly(Model model, const SchemeParams& sp, double q) {
  if (q < 0.0) throw std::domain_error("basic_poly: q must be >= 0");
  const double d = sp.delta, w = sp.omega, e = sp.eps_s_rel, a = sp.alpha();
  std::vector<double> z;  // descending powers of Z
  switch (model) {
    case Model::DebyeJoseph:
      z = {1 + d * e, -(3 + d * e - (1 + d) * q), 3 - d * e - (1 - d) * q, -(1 - d * e)};
      break;
    case Model::DebyeYoung:
      z = {(1 + d * a) * (1 + d), -(3 + d + d * a + 3 * d * d * a - (1 + d) * q),
           3 - d - d * a + 3 * d * d * a - (1 - d) * q, -(1 - d * a) * (1 - d)};
      break;
    case Model::LorentzJoseph:
      z = {1 + d + w * e, -(4 + 2 * d + 2 * w * e - (1 + d + w) * q), 6 + 2 * w * e - 2 * q,
           -(4 - 2 * d + 2 * w * e - (1 - d + w) * q), 1 - d + w * e};
      break;
    case Model::LorentzKashiwa:
      z = {1 + d + 0.5 * w * e, -(4 + 2 * d - (1 + d + 0.5 * w) * q), 6 - w * e + (w - 2) * q,
           -(4 - 2 * d - (1 - d + 0.5 * w) * q), 1 - d + 0.5 * w * e};
      break;
    case Model::LorentzYoung:
      z = {1 + d, -(4 + 2 * d - 2 * w * e - (1 + d) * q), 2 * (3 - 2 * w * e + (w - 1) * q),
           -(4 - 2 * d - 2 * w * e - (1 - d) * q), 1 - d};
      break;
  }
  std::reverse(z.begin(), z.end());
  return CPoly::from_real(z);
}

CPoly extra_factor(const SchemeId& id, const SchemeParams& sp) {
  if (id.dim != 2 || id.polarization == Polarization::TEz) return CPoly{cplx{1.0}};
  const double d = sp.delta, w = sp.omega, e = sp.eps_s_rel, a = sp.alpha();
  switch (id.model) {
    case Model::DebyeJoseph: return CPoly::from_real({-(1 - d * e), 1 + d * e});
    case Model::DebyeYoung: {
      const double lead = (1 + d) * (1 + d * a);
      return CPoly::from_real({2 * d * (1 + a) - lead, lead});
    }
    case Model::LorentzJoseph: return CPoly::from_real({1 - d + w * e, -2.0, 1 + d + w * e});
    case Model::LorentzKashiwa:
      return CPoly::from_real({1 - d + 0.5 * w * e, -(2 - w * e), 1 + d + 0.5 * w * e});
    case Model::LorentzYoung: return CPoly::from_real({1 - d, -(2 - 2 * w * e), 1 + d});
  }
  throw std::logic_error("unknown model");
}

CPoly expected_factorization(const SchemeId& id, const SchemeParams& sp, double q) {
  if (id.dim != 2) throw std::domain_error("expected_factorization: dim must be 2");
  const CPoly y{cplx{-1.0}, cplx{1.0}};
  return y * extra_factor(id, sp) * basic_poly(id.model, sp, q);
}

// ---------------------------------------------------------------------------

const char* to_string(TableVerdict v) {
  switch (v) {
    case TableVerdict::Stable: return "stable";
    case TableVerdict::Unstable: return "unstable";
    case TableVerdict::Avoid: return "avoid";
  }
  return "?";
}

namespace {
const char* row_label(RowKind r) {
  switch (r) {
    case RowKind::Joseph: return "Debye / Joseph et al.";
    case RowKind::Young: return "Debye / Young";
    case RowKind::LorentzJoseph: return "Lorentz / Joseph et al.";
    case RowKind::LorentzKashiwa: return "Lorentz / Kashiwa et al.";
    case RowKind::LorentzYoung: return "Lorentz / Young";
    case RowKind::HarmJoseph: return "Harm. / Joseph et al.";
    case RowKind::HarmKashiwa: return "Harm. / Kashiwa et al.";
    case RowKind::HarmYoung: return "Harm. / Young";
  }
  return "?";
}

bool unit_eps(double e) { return std::abs(e - 1.0) <= 1e-12; }
}  // namespace

std::string TableRowRef::name() const { return "Table " + std::to_string(table) + " / " + row_label(row); }

Model row_model(RowKind r) {
  switch (r) {
    case RowKind::Joseph: return Model::DebyeJoseph;
    case RowKind::Young: return Model::DebyeYoung;
    case RowKind::LorentzJoseph:
    case RowKind::HarmJoseph: return Model::LorentzJoseph;
    case RowKind::LorentzKashiwa:
    case RowKind::HarmKashiwa: return Model::LorentzKashiwa;
    case RowKind::LorentzYoung:
    case RowKind::HarmYoung: return Model::LorentzYoung;
  }
  throw std::logic_error("unknown row");
}

bool row_harmonic(RowKind r) {
  return r == RowKind::HarmJoseph || r == RowKind::HarmKashiwa || r == RowKind::HarmYoung;
}

TableRowRef table_row_for(Model model, const SchemeParams& sp) {
  TableRowRef ref;
  ref.table = unit_eps(sp.eps_s_rel) ? 2 : 1;
  const bool harm = is_lorentz(model) && sp.delta == 0.0;
  switch (model) {
    case Model::DebyeJoseph: ref.row = RowKind::Joseph; break;
    case Model::DebyeYoung: ref.row = RowKind::Young; break;
    case Model::LorentzJoseph: ref.row = harm ? RowKind::HarmJoseph : RowKind::LorentzJoseph; break;
    case Model::LorentzKashiwa: ref.row = harm ? RowKind::HarmKashiwa : RowKind::LorentzKashiwa; break;
    case Model::LorentzYoung: ref.row = harm ? RowKind::HarmYoung : RowKind::LorentzYoung; break;
  }
  return ref;
}

std::vector<TableRowRef> all_table_rows() {
  std::vector<TableRowRef> out;
  for (int t : {1, 2})
    for (RowKind r : {RowKind::Joseph, RowKind::Young, RowKind::LorentzJoseph, RowKind::LorentzKashiwa,
                      RowKind::LorentzYoung, RowKind::HarmJoseph, RowKind::HarmKashiwa, RowKind::HarmYoung})
      out.push_back({t, r});
  return out;
}

RowCondition row_condition(const TableRowRef& row, const SchemeParams& sp, const TableEncoding& enc) {
  auto Q = [](double b, bool strict, std::string t) { return Inequality{TableVar::Q, b, strict, std::move(t)}; };
  auto Dl = [](double b, bool strict, std::string t) { return Inequality{TableVar::Delta, b, strict, std::move(t)}; };
  auto Om = [](double b, bool strict, std::string t) { return Inequality{TableVar::Omega, b, strict, std::move(t)}; };
  const double e = sp.eps_s_rel;
  const double wy = 2.0 / (2.0 * e - 1.0);
  RowCondition rc;
  if (row.table == 1) {
    switch (row.row) {
      case RowKind::Joseph: rc.clauses = {{Q(4, false, "4")}}; break;
      case RowKind::Young: rc.clauses = {{Q(4, false, "4"), Dl(1, false, "1")}}; break;
      case RowKind::LorentzJoseph: rc.clauses = {{Q(2, false, "2")}}; break;
      case RowKind::LorentzKashiwa: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::LorentzYoung: rc.clauses = {{Q(2, false, "2"), Om(wy, false, "2/(2eps_s'-1)")}}; break;
      case RowKind::HarmJoseph: rc.clauses = {{Q(2, false, "2")}}; break;
      case RowKind::HarmKashiwa: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::HarmYoung:
        rc.clauses = {{Q(2, true, "2"), Om(wy, false, "2/(2eps_s'-1)")},
                      {Q(2, false, "2"), Om(wy, true, "2/(2eps_s'-1)")}};
        break;
    }
  } else {
    switch (row.row) {
      case RowKind::Joseph: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::Young: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::LorentzJoseph: rc.clauses = {{Q(2, false, "2")}}; break;
      case RowKind::LorentzKashiwa: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::LorentzYoung: rc.clauses = {{Q(2, false, "2"), Om(2, false, "2")}}; break;
      case RowKind::HarmJoseph:
        rc.clauses = {{Q(2 * sp.omega / (1 + sp.omega), true, "2omega/(1+omega)")}};
        rc.avoid = true;
        break;
      case RowKind::HarmKashiwa: rc.clauses = {{Q(4, true, "4")}}; break;
      case RowKind::HarmYoung: rc.clauses = {{Q(2, true, "2"), Om(1, true, "1")}}; break;
    }
  }
  if (enc.flipped && enc.flipped->row == row) {
    const auto c = static_cast<std::size_t>(enc.flipped->clause);
    const auto i = static_cast<std::size_t>(enc.flipped->index);
    if (c < rc.clauses.size() && i < rc.clauses[c].size()) rc.clauses[c][i].strict = !rc.clauses[c][i].strict;
  }
  return rc;
}

namespace {

const char* var_name(TableVar v) {
  switch (v) {
    case TableVar::Q: return "q";
    case TableVar::Delta: return "delta";
    case TableVar::Omega: return "omega";
  }
  return "?";
}

std::string describe(const Inequality& in) {
  return std::string(var_name(in.var)) + (in.strict ? " < " : " <= ") + in.bound_text;
}

}  // namespace

ConditionResult closed_form_condition_q(Model model, const SchemeParams& sp, double q, const TableEncoding& enc) {
  ConditionResult r;
  r.row = table_row_for(model, sp);
  const RowCondition rc = row_condition(r.row, sp, enc);
  auto value = [&](TableVar v) {
    switch (v) {
      case TableVar::Q: return q;
      case TableVar::Delta: return sp.delta;
      case TableVar::Omega: return sp.omega;
    }
    return 0.0;
  };
  std::string first_violation;
  std::string holding;
  for (const auto& clause : rc.clauses) {
    bool ok = true;
    std::string text;
    for (const Inequality& in : clause) {
      const double x = value(in.var);
      const bool pass = in.strict ? x < in.bound : x <= in.bound;
      if (!text.empty()) text += ", ";
      text += describe(in);
      if (!pass && ok) {
        ok = false;
        if (first_violation.empty()) {
          std::ostringstream os;
          os << describe(in) << " violated (" << var_name(in.var) << " = " << x << ")";
          first_violation = os.str();
        }
      }
    }
    if (ok) {
      r.condition_holds = true;
      holding = text;
      break;
    }
  }
  if (rc.avoid) {
    r.verdict = TableVerdict::Avoid;
    r.binding = "to avoid; " + (r.condition_holds ? holding + " holds" : first_violation);
  } else if (r.condition_holds) {
    r.verdict = TableVerdict::Stable;
    r.binding = holding;
  } else {
    r.verdict = TableVerdict::Unstable;
    r.binding = first_violation;
  }
  return r;
}

ConditionResult closed_form_condition(const SchemeId& id, const SchemeParams& sp, const TableEncoding& enc) {
  return closed_form_condition_q(id.model, sp, q_max(id, sp), enc);
}

}  // namespace maxstab
