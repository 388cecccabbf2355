#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sentivec/classifiers/classifiers.hpp"

// Text serialization for trained classifiers. Shared header
//   sentivec-model v1
//   kind <kind>
//   dimension <D>
//   config <key=val ...>
// followed by a kind-specific body. Doubles are written as hexfloats so a
// round trip reproduces every bit.

namespace sentivec {

namespace model_io_detail {

inline std::string hexf(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

inline double parse_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

inline void write_header(std::ostream& out, const char* kind, std::size_t dimension,
                         const std::string& config_line) {
  out << "sentivec-model v1\n";
  out << "kind " << kind << "\n";
  out << "dimension " << dimension << "\n";
  out << "config " << config_line << "\n";
}

struct Header {
  std::string kind;
  std::size_t dimension = 0;
  std::string config_line;
};

inline Header read_header(std::istream& in) {
  Header h;
  std::string line;
  if (!std::getline(in, line) || line != "sentivec-model v1")
    throw DataError("not a sentivec-model v1 file");
  if (!std::getline(in, line) || line.rfind("kind ", 0) != 0)
    throw DataError("model file: missing kind line");
  h.kind = line.substr(5);
  if (!std::getline(in, line) || line.rfind("dimension ", 0) != 0)
    throw DataError("model file: missing dimension line");
  h.dimension = std::stoull(line.substr(10));
  if (!std::getline(in, line) || line.rfind("config ", 0) != 0)
    throw DataError("model file: missing config line");
  h.config_line = line.substr(7);
  return h;
}

inline void write_dense(std::ostream& out, const char* tag, const DenseVector& v) {
  out << tag << ' ' << v.dimension();
  for (double x : v.values) out << ' ' << hexf(x);
  out << "\n";
}

inline DenseVector read_dense(std::istream& in, const char* tag) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("model file truncated");
  std::istringstream ss(line);
  std::string got;
  std::size_t n = 0;
  ss >> got >> n;
  if (got != tag) throw DataError("model file: expected " + std::string(tag) +
                                  " row, got " + got);
  DenseVector v(n);
  std::string tok;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ss >> tok)) throw DataError("model file: short vector row");
    v.values[i] = parse_double(tok);
  }
  return v;
}

inline void write_sparse(std::ostream& out, const SparseVector& v) {
  out << "sparse " << v.dim << ' ' << v.entries.size();
  for (const auto& [i, x] : v.entries) out << ' ' << i << ':' << hexf(x);
  out << "\n";
}

inline SparseVector read_sparse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("model file truncated");
  std::istringstream ss(line);
  std::string got;
  ss >> got;
  if (got != "sparse") throw DataError("model file: expected sparse row");
  SparseVector v;
  std::size_t nnz = 0;
  ss >> v.dim >> nnz;
  std::string tok;
  for (std::size_t e = 0; e < nnz; ++e) {
    if (!(ss >> tok)) throw DataError("model file: short sparse row");
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw DataError("model file: bad sparse entry");
    v.entries.emplace_back(static_cast<std::uint32_t>(std::stoul(tok.substr(0, colon))),
                           parse_double(tok.substr(colon + 1)));
  }
  return v;
}

inline const char* polarity_token(Polarity p) {
  return p == Polarity::Positive ? "+" : "-";
}

inline Polarity parse_polarity(const std::string& s) {
  if (s == "+") return Polarity::Positive;
  if (s == "-") return Polarity::Negative;
  throw DataError("model file: bad polarity token: " + s);
}

template <typename V>
void write_vector_row(std::ostream& out, const V& v) {
  if constexpr (std::is_same_v<V, SparseVector>)
    write_sparse(out, v);
  else
    write_dense(out, "dense", v);
}

template <typename V>
V read_vector_row(std::istream& in) {
  if constexpr (std::is_same_v<V, SparseVector>)
    return read_sparse(in);
  else
    return read_dense(in, "dense");
}

}  // namespace model_io_detail

// --- logistic ---

inline void save_model(const LogisticModel& model, std::ostream& out) {
  using namespace model_io_detail;
  write_header(out, "logistic", model.feature_dimension(), "");
  write_dense(out, "theta", model.theta);
}

inline LogisticModel load_logistic_model(std::istream& in) {
  using namespace model_io_detail;
  Header h = read_header(in);
  if (h.kind != "logistic") throw DataError("model file: expected kind logistic");
  LogisticModel model;
  model.theta = read_dense(in, "theta");
  if (model.theta.dimension() != h.dimension + 1)
    throw DataError("model file: theta dimension mismatch");
  return model;
}

// --- bernoulli naive bayes ---

inline void save_model(const BernoulliNbModel& model, std::ostream& out) {
  using namespace model_io_detail;
  write_header(out, "bernoulli_nb", model.dimension, "");
  out << "priors " << hexf(model.log_prior_pos) << ' ' << hexf(model.log_prior_neg)
      << "\n";
  write_dense(out, "p_pos", DenseVector(model.p_pos));
  write_dense(out, "p_neg", DenseVector(model.p_neg));
}

inline BernoulliNbModel load_bernoulli_nb_model(std::istream& in) {
  using namespace model_io_detail;
  Header h = read_header(in);
  if (h.kind != "bernoulli_nb")
    throw DataError("model file: expected kind bernoulli_nb");
  BernoulliNbModel model;
  model.dimension = h.dimension;
  std::string line;
  if (!std::getline(in, line) || line.rfind("priors ", 0) != 0)
    throw DataError("model file: missing priors line");
  {
    std::istringstream ss(line.substr(7));
    std::string a, b;
    ss >> a >> b;
    model.log_prior_pos = parse_double(a);
    model.log_prior_neg = parse_double(b);
  }
  model.p_pos = read_dense(in, "p_pos").values;
  model.p_neg = read_dense(in, "p_neg").values;
  if (model.p_pos.size() != h.dimension || model.p_neg.size() != h.dimension)
    throw DataError("model file: parameter dimension mismatch");
  for (std::size_t i = 0; i < h.dimension; ++i) {
    model.base_pos += std::log1p(-model.p_pos[i]);
    model.base_neg += std::log1p(-model.p_neg[i]);
  }
  return model;
}

// --- knn ---

template <typename V>
void save_model(const KnnModel<V>& model, std::ostream& out) {
  using namespace model_io_detail;
  write_header(out, "knn", model.train_data.dimension(),
               "k=" + std::to_string(model.k));
  out << "rows " << model.train_data.size() << "\n";
  for (std::size_t i = 0; i < model.train_data.size(); ++i) {
    out << "label " << polarity_token(model.train_data.labels[i]) << "\n";
    write_vector_row(out, model.train_data.rows[i]);
  }
}

template <typename V>
KnnModel<V> load_knn_model(std::istream& in) {
  using namespace model_io_detail;
  Header h = read_header(in);
  if (h.kind != "knn") throw DataError("model file: expected kind knn");
  KnnModel<V> model;
  if (h.config_line.rfind("k=", 0) != 0)
    throw DataError("model file: knn config must carry k");
  model.k = std::stoull(h.config_line.substr(2));
  std::string line;
  if (!std::getline(in, line) || line.rfind("rows ", 0) != 0)
    throw DataError("model file: missing rows line");
  std::size_t n = std::stoull(line.substr(5));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line) || line.rfind("label ", 0) != 0)
      throw DataError("model file: missing label line");
    model.train_data.labels.push_back(parse_polarity(line.substr(6)));
    model.train_data.rows.push_back(read_vector_row<V>(in));
  }
  return model;
}

// --- svm ---

template <typename V>
void save_model(const SvmModel<V>& model, std::ostream& out) {
  using namespace model_io_detail;
  std::string config = "C=" + hexf(model.C);
  if (const auto* rbf = std::get_if<RbfKernel>(&model.kernel))
    config += " kernel=rbf gamma=" + hexf(rbf->gamma);
  else
    config += " kernel=linear";
  config += model.converged ? " converged=1" : " converged=0";
  write_header(out, "svm", model.dimension, config);
  out << "bias " << hexf(model.bias) << "\n";
  if (std::holds_alternative<LinearKernel>(model.kernel)) {
    write_dense(out, "weights", model.weights);
  } else {
    out << "support " << model.support_vectors.size() << "\n";
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
      out << "coeff " << hexf(model.support_coeffs[i]) << "\n";
      write_vector_row(out, model.support_vectors[i]);
    }
  }
}

template <typename V>
SvmModel<V> load_svm_model(std::istream& in) {
  using namespace model_io_detail;
  Header h = read_header(in);
  if (h.kind != "svm") throw DataError("model file: expected kind svm");
  SvmModel<V> model;
  model.dimension = h.dimension;
  bool rbf = false;
  double gamma = 0.0;
  {
    std::istringstream ss(h.config_line);
    std::string kv;
    while (ss >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw DataError("model file: bad svm config token: " + kv);
      std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
      if (k == "C")
        model.C = parse_double(v);
      else if (k == "kernel")
        rbf = v == "rbf";
      else if (k == "gamma")
        gamma = parse_double(v);
      else if (k == "converged")
        model.converged = v == "1";
      else
        throw DataError("model file: unknown svm config key: " + k);
    }
  }
  model.kernel = rbf ? SvmKernel(RbfKernel{gamma}) : SvmKernel(LinearKernel{});
  std::string line;
  if (!std::getline(in, line) || line.rfind("bias ", 0) != 0)
    throw DataError("model file: missing bias line");
  model.bias = parse_double(line.substr(5));
  if (!rbf) {
    model.weights = read_dense(in, "weights");
    if (model.weights.dimension() != h.dimension)
      throw DataError("model file: weights dimension mismatch");
  } else {
    if (!std::getline(in, line) || line.rfind("support ", 0) != 0)
      throw DataError("model file: missing support line");
    std::size_t n = std::stoull(line.substr(8));
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::getline(in, line) || line.rfind("coeff ", 0) != 0)
        throw DataError("model file: missing coeff line");
      model.support_coeffs.push_back(parse_double(line.substr(6)));
      model.support_vectors.push_back(read_vector_row<V>(in));
    }
  }
  return model;
}

// --- decision tree ---

inline void save_model(const DecisionTreeModel& model, std::ostream& out) {
  using namespace model_io_detail;
  write_header(out, "decision_tree", model.dimension, "");
  out << "nodes " << model.nodes.size() << "\n";
  for (const TreeNode& node : model.nodes) {
    if (node.is_leaf)
      out << "leaf " << polarity_token(node.label) << "\n";
    else
      out << "test " << node.feature << ' ' << hexf(node.threshold) << ' '
          << node.left << ' ' << node.right << "\n";
  }
}

inline DecisionTreeModel load_decision_tree_model(std::istream& in) {
  using namespace model_io_detail;
  Header h = read_header(in);
  if (h.kind != "decision_tree")
    throw DataError("model file: expected kind decision_tree");
  DecisionTreeModel model;
  model.dimension = h.dimension;
  std::string line;
  if (!std::getline(in, line) || line.rfind("nodes ", 0) != 0)
    throw DataError("model file: missing nodes line");
  std::size_t n = std::stoull(line.substr(6));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("model file truncated");
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    TreeNode node;
    if (tag == "leaf") {
      std::string p;
      ss >> p;
      node.label = parse_polarity(p);
    } else if (tag == "test") {
      node.is_leaf = false;
      std::string thr;
      ss >> node.feature >> thr >> node.left >> node.right;
      node.threshold = parse_double(thr);
    } else {
      throw DataError("model file: bad node tag: " + tag);
    }
    model.nodes.push_back(node);
  }
  return model;
}

}  // namespace sentivec
