#include "dqr/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dqr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: value of '" + key + "' is not numeric: " + v);
  }
  if (pos != v.size()) {
    throw std::invalid_argument("config: trailing characters in '" + key + "': " + v);
  }
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d) {
    throw std::invalid_argument("config: '" + key + "' must be an integer: " + v);
  }
  return l;
}

}  // namespace

void RunConfig::validate() const {
  if (taus.empty()) throw std::invalid_argument("config: need at least one tau");
  for (double tau : taus) {
    if (!(tau > 0.0 && tau < 1.0)) {
      throw std::invalid_argument("config: tau must lie in (0, 1)");
    }
  }
  if (lags < 0) throw std::invalid_argument("config: lags must be >= 0");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (chains < 2) throw std::invalid_argument("config: chains must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("config: epsilon must lie in (0, 1)");
  }
  if (m_min < 1 || m_max < m_min) {
    throw std::invalid_argument("config: need 1 <= m_min <= m_max");
  }
  if (!(kappa > 0.0)) throw std::invalid_argument("config: kappa must be positive");
  if (collect < 1) throw std::invalid_argument("config: collect must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("config: alpha must lie in (0, 1]");
  }
  if (model_cap < 1 || model_cap > 24) {
    throw std::invalid_argument("config: model_cap must lie in [1, 24]");
  }
  if (!(a0 > 0.0) || !(b0 > 0.0)) {
    throw std::invalid_argument("config: a0 and b0 must be positive");
  }
  if (!(c0_scale > 0.0)) throw std::invalid_argument("config: c0_scale must be positive");
  if (c0 == 0.0) throw std::invalid_argument("config: c0 must be positive (or omitted)");
}

std::string RunConfig::canonical() const {
  // threads is an execution detail with no effect on any emitted number, so
  // it stays out of the canonical form (and hence the hash).
  std::ostringstream os;
  os << "taus=";
  for (std::size_t i = 0; i < taus.size(); ++i) os << (i ? " " : "") << fmt(taus[i]);
  os << "\nseed=" << seed << "\nlags=" << lags
     << "\nchains=" << chains << "\nepsilon=" << fmt(epsilon) << "\nm_min=" << m_min
     << "\nm_max=" << m_max << "\nkappa=" << fmt(kappa) << "\nfixed_lag=" << fixed_lag
     << "\ncollect=" << collect
     << "\nalpha=" << fmt(alpha) << "\nxi=" << fmt(xi) << "\nmodel_cap=" << model_cap
     << "\na0=" << fmt(a0) << "\nb0=" << fmt(b0) << "\nc0=" << fmt(c0)
     << "\nc0_scale=" << fmt(c0_scale) << "\n";
  return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RunConfig::hash_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config: malformed section at line " +
                                    std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "sampler" && section != "dma" &&
          section != "prior") {
        throw std::invalid_argument("config: unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section.empty() ? key : section + "." + key;

    if (qual == "run.taus") {
      cfg.taus.clear();
      std::istringstream vs(value);
      std::string tok;
      while (vs >> tok) cfg.taus.push_back(to_double(qual, tok));
    } else if (qual == "run.seed") {
      cfg.seed = static_cast<std::uint64_t>(to_long(qual, value));
    } else if (qual == "run.lags") {
      cfg.lags = static_cast<int>(to_long(qual, value));
    } else if (qual == "run.threads") {
      cfg.threads = static_cast<int>(to_long(qual, value));
    } else if (qual == "sampler.chains") {
      cfg.chains = static_cast<int>(to_long(qual, value));
    } else if (qual == "sampler.epsilon") {
      cfg.epsilon = to_double(qual, value);
    } else if (qual == "sampler.m_min") {
      cfg.m_min = static_cast<int>(to_long(qual, value));
    } else if (qual == "sampler.m_max") {
      cfg.m_max = static_cast<int>(to_long(qual, value));
    } else if (qual == "sampler.kappa") {
      cfg.kappa = to_double(qual, value);
    } else if (qual == "sampler.fixed_lag") {
      cfg.fixed_lag = static_cast<int>(to_long(qual, value));
    } else if (qual == "sampler.collect") {
      cfg.collect = static_cast<int>(to_long(qual, value));
    } else if (qual == "dma.alpha") {
      cfg.alpha = to_double(qual, value);
    } else if (qual == "dma.xi") {
      cfg.xi = (value == "auto") ? -1.0 : to_double(qual, value);
    } else if (qual == "dma.model_cap") {
      cfg.model_cap = static_cast<int>(to_long(qual, value));
    } else if (qual == "prior.a0") {
      cfg.a0 = to_double(qual, value);
    } else if (qual == "prior.b0") {
      cfg.b0 = to_double(qual, value);
    } else if (qual == "prior.c0") {
      cfg.c0 = (value == "auto") ? -1.0 : to_double(qual, value);
    } else if (qual == "prior.c0_scale") {
      cfg.c0_scale = to_double(qual, value);
    } else {
      throw std::invalid_argument("config: unknown key '" + qual + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace dqr
