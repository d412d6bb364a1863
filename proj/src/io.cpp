#include "lab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lab/errors.hpp"

namespace lab::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void expect_tag(std::istream& in, const std::string& want) {
  std::string got;
  if (!(in >> got) || got != want)
    throw domain_error("instance file: expected '" + want + "', got '" + got +
                       "'");
}

double read_double(std::istream& in, const char* what) {
  double v;
  if (!(in >> v)) throw domain_error(std::string("instance file: bad ") + what);
  return v;
}

std::size_t read_size(std::istream& in, const char* what) {
  long long v;
  if (!(in >> v) || v < 0)
    throw domain_error(std::string("instance file: bad ") + what);
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string write_pattern_set(const ProductSpace& space,
                              const std::vector<std::size_t>& members) {
  std::ostringstream out;
  out << "lab-instance pattern_set 1\n";
  out << "factors " << space.factor_count() << "\n";
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    const FiniteSpace& f = space.factor(i);
    out << "factor " << f.size();
    for (std::size_t p = 0; p < f.size(); ++p) out << " " << fmt(f.weight(p));
    out << "\n";
  }
  out << "members " << members.size() << "\n";
  std::vector<std::size_t> digits(space.factor_count());
  for (std::size_t m : members) {
    space.decode(m, digits);
    for (std::size_t i = 0; i < digits.size(); ++i)
      out << (i ? " " : "") << digits[i];
    out << "\n";
  }
  return out.str();
}

ParsedPatternSet read_pattern_set(std::istream& in) {
  expect_tag(in, "lab-instance");
  expect_tag(in, "pattern_set");
  expect_tag(in, "1");
  expect_tag(in, "factors");
  const std::size_t nf = read_size(in, "factor count");
  std::vector<FiniteSpace> factors;
  for (std::size_t i = 0; i < nf; ++i) {
    expect_tag(in, "factor");
    const std::size_t size = read_size(in, "factor size");
    std::vector<double> w(size);
    for (double& v : w) v = read_double(in, "weight");
    std::vector<std::string> pts(size);
    for (std::size_t p = 0; p < size; ++p) pts[p] = std::to_string(p);
    factors.emplace_back(std::move(pts), std::move(w));
  }
  ProductSpace space(std::move(factors));
  expect_tag(in, "members");
  const std::size_t count = read_size(in, "member count");
  std::vector<std::size_t> members(count);
  std::vector<std::size_t> digits(space.factor_count());
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t i = 0; i < digits.size(); ++i)
      digits[i] = read_size(in, "member digit");
    members[m] = space.encode(digits);
  }
  return {std::move(space), std::move(members)};
}

ParsedPatternSet read_pattern_set_string(const std::string& text) {
  std::istringstream in(text);
  return read_pattern_set(in);
}

std::string write_measure(const DiscreteMeasure& measure) {
  std::ostringstream out;
  out << "lab-instance measure 1\n";
  out << "dim " << measure.dim() << "\n";
  out << "points " << measure.size() << "\n";
  for (std::size_t i = 0; i < measure.size(); ++i) {
    for (double c : measure.points[i]) out << fmt(c) << " ";
    out << fmt(measure.weights[i]) << "\n";
  }
  return out.str();
}

DiscreteMeasure read_measure(std::istream& in) {
  expect_tag(in, "lab-instance");
  expect_tag(in, "measure");
  expect_tag(in, "1");
  expect_tag(in, "dim");
  const std::size_t dim = read_size(in, "dim");
  expect_tag(in, "points");
  const std::size_t count = read_size(in, "point count");
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  std::vector<double> wts(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (double& c : pts[i]) c = read_double(in, "coordinate");
    wts[i] = read_double(in, "weight");
  }
  return DiscreteMeasure(std::move(pts), std::move(wts));
}

DiscreteMeasure read_measure_string(const std::string& text) {
  std::istringstream in(text);
  return read_measure(in);
}

std::string write_plan_matrix(const TransportPlan& plan) {
  std::ostringstream out;
  for (std::size_t i = 0; i < plan.rows; ++i) {
    for (std::size_t j = 0; j < plan.cols; ++j)
      out << (j ? " " : "") << fmt(plan.at(i, j));
    out << "\n";
  }
  return out.str();
}

std::string write_process(const ProcessInstance& inst) {
  std::ostringstream out;
  out << "lab-instance process 1\n";
  out << "spaces " << inst.n() << " family " << inst.family_size() << "\n";
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const FiniteSpace& s = inst.space(i);
    out << "space " << s.size();
    for (std::size_t p = 0; p < s.size(); ++p) out << " " << fmt(s.weight(p));
    out << "\n";
  }
  for (std::size_t k = 0; k < inst.family_size(); ++k) {
    out << "g";
    for (std::size_t i = 0; i < inst.n(); ++i)
      for (std::size_t p = 0; p < inst.space(i).size(); ++p)
        out << " " << fmt(inst.g(k, i, p));
    out << "\n";
  }
  return out.str();
}

ProcessInstance read_process(std::istream& in) {
  expect_tag(in, "lab-instance");
  expect_tag(in, "process");
  expect_tag(in, "1");
  expect_tag(in, "spaces");
  const std::size_t n = read_size(in, "space count");
  expect_tag(in, "family");
  const std::size_t N = read_size(in, "family size");
  std::vector<FiniteSpace> spaces;
  for (std::size_t i = 0; i < n; ++i) {
    expect_tag(in, "space");
    const std::size_t size = read_size(in, "space size");
    std::vector<double> w(size);
    for (double& v : w) v = read_double(in, "weight");
    std::vector<std::string> pts(size);
    for (std::size_t p = 0; p < size; ++p) pts[p] = std::to_string(p);
    spaces.emplace_back(std::move(pts), std::move(w));
  }
  std::vector<std::vector<std::vector<double>>> family(N);
  for (std::size_t k = 0; k < N; ++k) {
    expect_tag(in, "g");
    family[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      family[k][i].resize(spaces[i].size());
      for (double& v : family[k][i]) v = read_double(in, "table value");
    }
  }
  return ProcessInstance(std::move(spaces), std::move(family));
}

ProcessInstance read_process_string(const std::string& text) {
  std::istringstream in(text);
  return read_process(in);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open for writing: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lab::io
