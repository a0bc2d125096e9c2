#include "aztext/model_io.hpp"

#include <cstring>
#include <fstream>

#include "aztext/errors.hpp"
#include "aztext/utf8.hpp"

namespace aztext {

namespace {

constexpr char kMagic[4] = {'A', 'Z', 'T', 'X'};

struct ByteWriter {
  std::string buf;

  void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    u64(bits);
  }
  void str(const std::string& s) {
    u64(s.size());
    buf.append(s);
  }
  void f64_vec(const std::vector<double>& v) {
    u64(v.size());
    for (double x : v) f64(x);
  }
  void str_vec(const std::vector<std::string>& v) {
    u64(v.size());
    for (const auto& s : v) str(s);
  }
};

struct ByteReader {
  const std::string& data;
  std::size_t pos = 0;

  void need(std::uint64_t n) const {
    if (n > data.size() - pos) throw TruncatedFile();  // pos <= size always
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data[pos++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos++])) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string str() {
    std::uint64_t n = u64();
    need(n);
    std::string s = data.substr(pos, n);
    pos += n;
    return s;
  }
  std::vector<double> f64_vec() {
    std::uint64_t n = u64();
    if (n > (data.size() - pos) / 8) throw TruncatedFile();  // before allocating
    std::vector<double> v(n);
    for (auto& x : v) x = f64();
    return v;
  }
  std::vector<std::string> str_vec() {
    std::uint64_t n = u64();
    std::vector<std::string> v;
    v.reserve(std::min<std::uint64_t>(n, 1 << 20));
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(str());
    return v;
  }
};

void write_pipeline(ByteWriter& w, const PipelineConfig& p) {
  w.u64(p.stopwords.size());
  for (const auto& s : p.stopwords) w.str(s);
  w.u8(p.stemming ? 1 : 0);
  w.u8(p.keep_digits ? 1 : 0);
  w.u32(p.min_token_len);
  w.str_vec(p.stem_suffixes);
}

PipelineConfig read_pipeline(ByteReader& r) {
  PipelineConfig p;
  std::uint64_t n = r.u64();
  for (std::uint64_t i = 0; i < n; ++i) p.stopwords.insert(r.str());
  p.stemming = r.u8() != 0;
  p.keep_digits = r.u8() != 0;
  p.min_token_len = r.u32();
  p.stem_suffixes = r.str_vec();
  return p;
}

void write_payload(ByteWriter& w, const TrainedModel& model) {
  w.u8(static_cast<std::uint8_t>(model.vectorizer));
  write_pipeline(w, model.pipeline);
  w.str_vec(model.class_names);
  w.str_vec(model.vocab.terms);
  w.u64(model.vocab.doc_count);
  w.u64(model.vocab.df.size());
  for (std::uint64_t df : model.vocab.df) w.u64(df);
  w.u8(model.idf.idf.empty() ? 0 : 1);
  if (!model.idf.idf.empty()) w.f64_vec(model.idf.idf);

  if (const auto* nb = std::get_if<NbModel>(&model.payload)) {
    w.f64(nb->alpha);
    w.u64(nb->class_count);
    w.u64(nb->vocab_size);
    w.f64_vec(nb->log_priors);
    w.f64_vec(nb->log_likelihoods);
  } else if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
    w.f64(svm->lambda);
    w.u32(svm->epochs);
    w.u64(svm->seed);
    w.u64(svm->weights.size());
    for (const auto& wc : svm->weights) w.f64_vec(wc);
    w.f64_vec(svm->bias);
  } else {
    const auto& mlp = std::get<MlpModel>(model.payload);
    w.str(mlp.activation);
    w.u64(mlp.seed);
    w.u64(mlp.layer_sizes.size());
    for (std::uint32_t s : mlp.layer_sizes) w.u32(s);
    for (const auto& wl : mlp.weights) w.f64_vec(wl);
    for (const auto& bl : mlp.biases) w.f64_vec(bl);
  }
}

void read_payload(ByteReader& r, ModelKind kind, TrainedModel& model) {
  std::uint8_t vec_tag = r.u8();
  if (vec_tag > 2) throw FormatError("unknown vectorizer tag");
  model.vectorizer = static_cast<VectorizerKind>(vec_tag);
  model.pipeline = read_pipeline(r);
  model.class_names = r.str_vec();
  model.vocab.terms = r.str_vec();
  model.vocab.doc_count = r.u64();
  std::uint64_t df_n = r.u64();
  model.vocab.df.resize(df_n);
  for (auto& df : model.vocab.df) df = r.u64();
  if (model.vocab.df.size() != model.vocab.terms.size()) {
    throw FormatError("vocabulary arrays disagree");
  }
  for (std::uint32_t i = 0; i < model.vocab.terms.size(); ++i) {
    model.vocab.index.emplace(model.vocab.terms[i], i);
  }
  if (r.u8() != 0) {
    model.idf.idf = r.f64_vec();
    if (model.idf.idf.size() != model.vocab.terms.size()) {
      throw FormatError("idf table does not match vocabulary");
    }
  }

  if (kind == ModelKind::nb) {
    NbModel nb;
    nb.alpha = r.f64();
    nb.class_count = r.u64();
    nb.vocab_size = r.u64();
    nb.log_priors = r.f64_vec();
    nb.log_likelihoods = r.f64_vec();
    if (nb.log_priors.size() != nb.class_count ||
        nb.log_likelihoods.size() != nb.class_count * nb.vocab_size) {
      throw FormatError("naive bayes arrays disagree");
    }
    model.payload = std::move(nb);
  } else if (kind == ModelKind::svm) {
    SvmModel svm;
    svm.lambda = r.f64();
    svm.epochs = r.u32();
    svm.seed = r.u64();
    std::uint64_t C = r.u64();
    svm.weights.resize(C);
    for (auto& wc : svm.weights) wc = r.f64_vec();
    svm.bias = r.f64_vec();
    if (svm.bias.size() != C) throw FormatError("svm arrays disagree");
    model.payload = std::move(svm);
  } else {
    MlpModel mlp;
    mlp.activation = r.str();
    mlp.seed = r.u64();
    std::uint64_t layers = r.u64();
    mlp.layer_sizes.resize(layers);
    for (auto& s : mlp.layer_sizes) s = r.u32();
    if (layers < 2) throw FormatError("mlp needs at least two layers");
    mlp.weights.resize(layers - 1);
    for (auto& wl : mlp.weights) wl = r.f64_vec();
    mlp.biases.resize(layers - 1);
    for (auto& bl : mlp.biases) bl = r.f64_vec();
    for (std::size_t l = 0; l + 1 < layers; ++l) {
      std::size_t in = mlp.layer_sizes[l], out = mlp.layer_sizes[l + 1];
      if (mlp.weights[l].size() != in * out || mlp.biases[l].size() != out) {
        throw FormatError("mlp arrays disagree");
      }
    }
    if (mlp.activation != "tanh") throw FormatError("unknown activation: " + mlp.activation);
    model.payload = std::move(mlp);
  }
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::nb: return "nb";
    case ModelKind::svm: return "svm";
    case ModelKind::mlp: return "mlp";
  }
  return "?";
}

const char* vectorizer_kind_name(VectorizerKind kind) {
  switch (kind) {
    case VectorizerKind::binary: return "binary";
    case VectorizerKind::count: return "count";
    case VectorizerKind::tfidf: return "tfidf";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "nb") return ModelKind::nb;
  if (name == "svm") return ModelKind::svm;
  if (name == "mlp") return ModelKind::mlp;
  throw Error("unknown model kind: " + name + " (expected nb|svm|mlp)");
}

VectorizerKind parse_vectorizer_kind(const std::string& name) {
  if (name == "binary") return VectorizerKind::binary;
  if (name == "count") return VectorizerKind::count;
  if (name == "tfidf") return VectorizerKind::tfidf;
  throw Error("unknown vectorizer: " + name + " (expected binary|count|tfidf)");
}

void save_model(const TrainedModel& model, const std::string& path) {
  ByteWriter payload;
  write_payload(payload, model);

  ByteWriter out;
  out.buf.append(kMagic, sizeof(kMagic));
  out.u32(model.format_version);
  out.u8(static_cast<std::uint8_t>(model.kind()));
  out.u64(payload.buf.size());
  out.buf += payload.buf;

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open for writing: " + path);
  file.write(out.buf.data(), static_cast<std::streamsize>(out.buf.size()));
  file.flush();
  if (!file) throw Error("write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw MissingFile(path);
  std::string data((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());

  if (data.size() < 4 || std::memcmp(data.data(), kMagic, 4) != 0) {
    throw FormatError("bad magic bytes (not a model file)");
  }
  ByteReader r{data, 4};
  std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) throw VersionError(version, kModelFormatVersion);
  std::uint8_t kind_tag = r.u8();
  if (kind_tag > 2) throw FormatError("unknown model kind tag");
  std::uint64_t payload_len = r.u64();
  if (r.pos + payload_len > data.size()) throw TruncatedFile();
  if (r.pos + payload_len < data.size()) throw FormatError("trailing bytes after payload");

  TrainedModel model;
  model.format_version = version;
  read_payload(r, static_cast<ModelKind>(kind_tag), model);
  if (r.pos != data.size()) throw FormatError("payload length disagrees with content");
  return model;
}

SparseVector vectorize_for_model(const TrainedModel& model, const std::vector<Token>& tokens) {
  switch (model.vectorizer) {
    case VectorizerKind::binary:
      return vectorize_binary(tokens, model.vocab);
    case VectorizerKind::count:
      return vectorize_count(tokens, model.vocab);
    case VectorizerKind::tfidf: {
      bool any = false;
      for (const auto& tok : tokens) {
        if (model.vocab.lookup(tok) >= 0) {
          any = true;
          break;
        }
      }
      if (!any) return {};
      return vectorize_tfidf(tokens, model.vocab, model.idf);
    }
  }
  return {};
}

Prediction predict_vector(const TrainedModel& model, const SparseVector& x) {
  Prediction pred;
  if (const auto* nb = std::get_if<NbModel>(&model.payload)) {
    pred.scores = nb_log_posteriors(*nb, x);
  } else if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
    pred.scores = svm_decisions(*svm, x);
  } else {
    pred.scores = mlp_probabilities(std::get<MlpModel>(model.payload), x);
  }
  pred.class_index = static_cast<std::uint32_t>(argmax_lowest(pred.scores));
  pred.class_name = model.class_names[pred.class_index];
  return pred;
}

Prediction predict_text(const TrainedModel& model, std::string_view raw_text) {
  std::string normalized = normalize(raw_text);
  bool blank = true;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    char32_t cp = utf8::decode(normalized, pos);
    if (cp != U' ' && cp != U'\t' && cp != U'\n' && cp != U'\r' && cp != U'\f' && cp != U'\v' &&
        cp != U' ') {
      blank = false;
      break;
    }
  }
  if (blank) throw EmptyInput();

  std::vector<Token> tokens = pipeline_tokens(raw_text, model.pipeline);
  return predict_vector(model, vectorize_for_model(model, tokens));
}

}  // namespace aztext
