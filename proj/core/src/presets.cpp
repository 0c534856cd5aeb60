#include "kbest/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace kbest::presets {
namespace {

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

SystemParams base() {
  SystemParams p;
  p.lambda = 2.0;
  p.beta = 3.0;
  p.m = 2.0;
  p.eta = 20.0;
  p.p_m = 1.0;
  p.t_intf = 0.1;
  p.p_s = kUnlimitedPower;
  p.n_users = 40;
  p.k_rank = 1;
  return p;
}

bool is_study(std::string_view id) {
  return id == "fig2" || id == "fig3" || id == "fig4" || id == "fig5" ||
         id == "fig6" || id == "fig7" || id == "fig8" || id == "fig9";
}

std::vector<std::string> study_columns(std::string_view id) {
  if (id == "fig2") return {"n_users", "k_rank", "p_s"};
  if (id == "fig3") return {"n_users", "p_s"};
  if (id == "fig4") return {"n_users", "t_intf", "p_s"};
  if (id == "fig5") return {"n_users", "k_rank", "p_s"};
  if (id == "fig6") return {"a_exp", "p_s"};
  if (id == "fig7") return {"k_rank", "t_intf", "p_s"};
  if (id == "fig8") return {"n_users", "p_s"};
  if (id == "fig9") return {"k_rank", "a_exp", "rho"};
  throw std::invalid_argument("unknown study id");
}

std::vector<StudyRow> study_rows(std::string_view id) {
  std::vector<StudyRow> rows;
  const SystemParams proto = base();

  if (id == "fig2") {
    // average throughput growth with the user count, per rank and power cap
    for (double ps : {10.0, kUnlimitedPower}) {
      for (int k : {1, 2, 3}) {
        for (int n = 10; n <= 200; n += 10) {
          SystemParams p = proto;
          p.p_s = ps;
          p.k_rank = k;
          p.n_users = n;
          rows.push_back({p, std::nullopt, AvgThroughput{},
                          {static_cast<double>(n), static_cast<double>(k), ps}});
        }
      }
    }
    return rows;
  }

  if (id == "fig3") {
    // average throughput vs peak power: adaptation region to saturation
    for (int n : {6, 30}) {
      for (int i = 0; i <= 20; ++i) {
        const double ps = from_db(-20.0 + 2.0 * i);
        SystemParams p = proto;
        p.n_users = n;
        p.p_s = ps;
        rows.push_back(
            {p, std::nullopt, AvgThroughput{}, {static_cast<double>(n), ps}});
      }
    }
    return rows;
  }

  if (id == "fig4") {
    // average throughput vs interference cap, with and without peak power
    for (double ps : {0.01, kUnlimitedPower}) {
      for (int n : {20, 100}) {
        for (int i = 0; i <= 20; ++i) {
          const double t = from_db(-50.0 + 2.5 * i);
          SystemParams p = proto;
          p.p_s = ps;
          p.n_users = n;
          p.t_intf = t;
          rows.push_back({p, std::nullopt, AvgThroughput{},
                          {static_cast<double>(n), t, ps}});
        }
      }
    }
    return rows;
  }

  if (id == "fig5") {
    // effective throughput (delay exponent 1/2) vs user count
    const double ps_cap = from_db(5.0);
    for (double ps : {ps_cap, kUnlimitedPower}) {
      for (int k : {1, 2, 4}) {
        for (int n = 10; n <= 200; n += 10) {
          SystemParams p = proto;
          p.p_s = ps;
          p.k_rank = k;
          p.n_users = n;
          rows.push_back({p, std::nullopt, EffThroughput{0.5},
                          {static_cast<double>(n), static_cast<double>(k), ps}});
        }
      }
    }
    return rows;
  }

  if (id == "fig6") {
    // effective throughput vs delay exponent, several power caps
    for (double ps : {0.1, 1.0, 10.0, kUnlimitedPower}) {
      for (int i = 1; i <= 40; ++i) {
        const double a = 0.1 * i;
        SystemParams p = proto;
        p.n_users = 30;
        p.p_s = ps;
        rows.push_back({p, std::nullopt, EffThroughput{a}, {a, ps}});
      }
    }
    return rows;
  }

  if (id == "fig7") {
    // outage probability vs interference cap
    const double x0 = from_db(13.0);
    for (double ps : {0.1, kUnlimitedPower}) {
      for (int k : {1, 2}) {
        for (int i = 0; i <= 14; ++i) {
          const double t = from_db(-40.0 + 2.5 * i);
          SystemParams p = proto;
          p.n_users = 30;
          p.k_rank = k;
          p.p_s = ps;
          p.t_intf = t;
          rows.push_back({p, std::nullopt, Outage{x0},
                          {static_cast<double>(k), t, ps}});
        }
      }
    }
    return rows;
  }

  if (id == "fig8") {
    // average BER (c = v = 1/2) vs user count
    const double ps_cap = from_db(-5.0);
    for (double ps : {ps_cap, kUnlimitedPower}) {
      for (int n = 10; n <= 200; n += 10) {
        SystemParams p = proto;
        p.p_s = ps;
        p.n_users = n;
        rows.push_back({p, std::nullopt, AvgBer{0.5, 0.5},
                        {static_cast<double>(n), ps}});
      }
    }
    return rows;
  }

  if (id == "fig9") {
    // imperfect-CSI effective throughput vs estimate correlation
    for (int k : {1, 2}) {
      for (double a : {0.0, 0.5}) {
        for (int i = 0; i <= 10; ++i) {
          const double rho = (10.0 + i) / 20.0;  // exact 1.0 at the endpoint
          SystemParams p = proto;
          p.n_users = 40;
          p.k_rank = k;
          CsiParams c;
          c.rho = rho;
          c.delta = 1.0;
          c.gamma0 = 0.1;
          c.eta_hat = 20.0;
          c.beta_hat = 3.0;
          Metric metric;
          if (a == 0.0) {
            metric = AvgThroughput{};
          } else {
            metric = EffThroughput{a};
          }
          rows.push_back(
              {p, c, metric, {static_cast<double>(k), a, rho}});
        }
      }
    }
    return rows;
  }

  throw std::invalid_argument("unknown study id");
}

}  // namespace kbest::presets
