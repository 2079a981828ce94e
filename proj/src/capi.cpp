#include "condmorph/condmorph.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "condmorph/config.hpp"
#include "condmorph/error.hpp"
#include "condmorph/evaluation.hpp"
#include "condmorph/experiment.hpp"
#include "condmorph/image_io.hpp"
#include "condmorph/mlp.hpp"
#include "condmorph/morphology.hpp"
#include "condmorph/soft.hpp"
#include "condmorph/vote.hpp"

using namespace condmorph;

struct cm_image {
  ColorImage image;
};

struct cm_image_list {
  std::vector<ColorImage> images;
};

// Either a fixed mapping or Borda over `voters`, resolved on the colors at hand.
struct cm_ordering {
  MappingPtr fixed;
  MappingFamily voters;
  std::vector<std::string> voter_names;

  bool is_borda() const { return !fixed; }
  MappingPtr resolve(std::span<const ColorValue> values) const {
    return fixed ? fixed : mapping_for_values("borda", voters, values);
  }
  std::string name() const {
    if (fixed) return fixed->name();
    std::string out = "borda(";
    for (std::size_t i = 0; i < voter_names.size(); ++i) out += (i ? "," : "") + voter_names[i];
    return out + ")";
  }
};

struct cm_profile {
  VoteProfile profile;
};

struct cm_model {
  ModelFile file;
  TrainResult curve;  // empty for loaded models
};

namespace {

thread_local std::string last_error;

struct InvalidArgument {
  std::string message;
};

cm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return CM_ERR_DIMENSION;
    case ErrorCode::kDomain: return CM_ERR_DOMAIN;
    case ErrorCode::kLookup: return CM_ERR_LOOKUP;
    case ErrorCode::kConfig: return CM_ERR_CONFIG;
    case ErrorCode::kFormat: return CM_ERR_FORMAT;
    case ErrorCode::kNumeric: return CM_ERR_NUMERIC;
    case ErrorCode::kSize: return CM_ERR_SIZE;
    case ErrorCode::kInvalidOrder: return CM_ERR_INVALID_ORDER;
  }
  return CM_ERR_INTERNAL;
}

template <typename Fn>
cm_status guarded(Fn&& fn) noexcept {
  last_error.clear();
  try {
    fn();
    return CM_OK;
  } catch (const InvalidArgument& e) {
    last_error = e.message;
    return CM_ERR_INVALID_ARGUMENT;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = std::string("format: ") + e.what();
    return CM_ERR_FORMAT;
  } catch (const std::bad_alloc&) {
    last_error = "internal: out of memory";
    return CM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return CM_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal: unknown failure";
    return CM_ERR_INTERNAL;
  }
}

template <typename T>
const T& need(const T* p, const char* what) {
  if (!p) throw InvalidArgument{std::string("invalid argument: ") + what + " is NULL"};
  return *p;
}

template <typename T>
T& need_out(T* p, const char* what) {
  if (!p) throw InvalidArgument{std::string("invalid argument: ") + what + " is NULL"};
  return *p;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<std::string> string_list(const char* const* items, std::size_t n, const char* what) {
  if (n > 0 && !items) need<char>(nullptr, what);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(&need(items[i], what));
  return out;
}

SoftConfig soft_config(const cm_soft_config* cfg) {
  SoftConfig out;
  if (cfg) {
    out.tau = cfg->tau;
    out.epochs = cfg->epochs;
    out.batch_size = cfg->batch_size;
    out.learning_rate = cfg->learning_rate;
    out.beta1 = cfg->beta1;
    out.beta2 = cfg->beta2;
    out.epsilon = cfg->epsilon;
    out.seed = cfg->seed;
  }
  return out;
}

ExperimentConfig experiment_config(const char* path, const char* const* overrides, std::size_t n) {
  ExperimentConfig cfg = path ? load_experiment_config(path) : ExperimentConfig{};
  return apply_overrides(cfg, string_list(overrides, n, "override"));
}

}  // namespace

extern "C" {

const char* cm_version(void) { return "0.1.0"; }

const char* cm_last_error(void) { return last_error.c_str(); }

const char* cm_status_name(cm_status status) {
  switch (status) {
    case CM_OK: return "ok";
    case CM_ERR_INTERNAL: return "internal";
    case CM_ERR_CONFIG: return "config";
    case CM_ERR_FORMAT: return "format";
    case CM_ERR_NUMERIC: return "numeric";
    case CM_ERR_DIMENSION: return "dimension";
    case CM_ERR_LOOKUP: return "lookup";
    case CM_ERR_INVALID_ORDER: return "invalid-order";
    case CM_ERR_SIZE: return "size";
    case CM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case CM_ERR_DOMAIN: return "domain";
  }
  return "unknown";
}

void cm_string_free(char* s) { std::free(s); }

cm_status cm_image_from_rgb8(int width, int height, const uint8_t* rgb, cm_image** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    if (width <= 0 || height <= 0) fail(ErrorCode::kDimension, "image size must be positive");
    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
    need(rgb, "rgb");
    slot = new cm_image{ColorImage::from_rgb8(width, height, std::span(rgb, n))};
  });
}

cm_status cm_image_read(const char* path, cm_image** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_image{read_image(&need(path, "path"))};
  });
}

cm_status cm_image_write(const cm_image* image, const char* path) {
  return guarded([&] { write_image(&need(path, "path"), need(image, "image").image); });
}

cm_status cm_image_size(const cm_image* image, int* width, int* height) {
  return guarded([&] {
    const auto& img = need(image, "image").image;
    if (width) *width = img.width();
    if (height) *height = img.height();
  });
}

cm_status cm_image_to_rgb8(const cm_image* image, uint8_t* rgb, size_t len) {
  return guarded([&] {
    const auto bytes = need(image, "image").image.to_rgb8();
    need(rgb, "rgb");
    if (len < bytes.size()) fail(ErrorCode::kSize, "buffer too small for image");
    std::memcpy(rgb, bytes.data(), bytes.size());
  });
}

void cm_image_free(cm_image* image) { delete image; }

cm_status cm_cifar_load(const char* path, size_t first, size_t count, cm_image_list** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_image_list{load_cifar_batch(&need(path, "path"), first, count)};
  });
}

cm_status cm_image_list_new(cm_image_list** out) {
  return guarded([&] { need_out(out, "out") = new cm_image_list{}; });
}

cm_status cm_image_list_push(cm_image_list* list, const cm_image* image) {
  return guarded([&] { need_out(list, "list").images.push_back(need(image, "image").image); });
}

size_t cm_image_list_size(const cm_image_list* list) { return list ? list->images.size() : 0; }

cm_status cm_image_list_get(const cm_image_list* list, size_t index, cm_image** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    const auto& images = need(list, "list").images;
    if (index >= images.size()) fail(ErrorCode::kLookup, "image index out of range");
    slot = new cm_image{images[index]};
  });
}

void cm_image_list_free(cm_image_list* list) { delete list; }

cm_status cm_ordering_new(const char* name, cm_ordering** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_ordering{mapping_by_name(&need(name, "name")), {}, {}};
  });
}

cm_status cm_ordering_new_borda(const char* const* voters, size_t n_voters, cm_ordering** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    auto names = string_list(voters, n_voters, "voter");
    auto family = mapping_family(names);
    slot = new cm_ordering{nullptr, std::move(family), std::move(names)};
  });
}

cm_status cm_ordering_from_model(const cm_model* model, cm_ordering** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_ordering{std::make_shared<LearnedMapping>(need(model, "model").file.params), {}, {}};
  });
}

cm_status cm_ordering_name(const cm_ordering* ordering, char** out) {
  return guarded([&] { need_out(out, "out") = dup_string(need(ordering, "ordering").name()); });
}

void cm_ordering_free(cm_ordering* ordering) { delete ordering; }

cm_status cm_rank_colors(const cm_ordering* ordering, const double* colors, size_t n,
                         size_t channels, double* sorted) {
  return guarded([&] {
    const auto& ord = need(ordering, "ordering");
    if (n == 0) return;
    need(colors, "colors");
    need_out(sorted, "sorted");
    if (channels == 0) fail(ErrorCode::kDimension, "colors need at least one channel");
    std::vector<ColorValue> values;
    for (std::size_t i = 0; i < n; ++i) {
      values.emplace_back(std::span(colors + i * channels, channels));
    }
    const auto ranked = ord.is_borda() ? rank_colors("borda", values, ord.voters)
                                       : rank_colors(*ord.resolve(values), values);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(ranked[i].channels().begin(), ranked[i].channels().end(), sorted + i * channels);
    }
  });
}

cm_status cm_rank_lut_csv(const cm_ordering* ordering, const cm_image* image, char** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    const auto& img = need(image, "image").image;
    const auto values = unique_colors(img);
    const auto h = need(ordering, "ordering").resolve(values);
    slot = dup_string(build_rank_lut(*h, img).to_csv());
  });
}

cm_status cm_morph(const cm_image* image, const cm_ordering* ordering, const char* op,
                   const char* se, cm_image** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    const auto& img = need(image, "image").image;
    const auto morph_op = parse_morph_op(&need(op, "op"));
    const auto element = StructuringElement::parse(&need(se, "se"));
    const auto h = need(ordering, "ordering").resolve(unique_colors(img));
    slot = new cm_image{apply(morph_op, img, *h, element)};
  });
}

void cm_soft_config_default(cm_soft_config* cfg) {
  if (!cfg) return;
  const SoftConfig d;
  *cfg = cm_soft_config{d.tau, d.epochs, d.batch_size, d.learning_rate,
                        d.beta1, d.beta2, d.epsilon, d.seed};
}

cm_status cm_profile_parse(const char* text, cm_profile** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_profile{parse_vote_profile(&need(text, "text"))};
  });
}

cm_status cm_profile_read(const char* path, cm_profile** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    slot = new cm_profile{read_vote_profile(&need(path, "path"))};
  });
}

size_t cm_profile_candidates(const cm_profile* profile) {
  return profile ? profile->profile.candidates : 0;
}

size_t cm_profile_voters(const cm_profile* profile) {
  return profile ? profile->profile.voters.size() : 0;
}

void cm_profile_free(cm_profile* profile) { delete profile; }

cm_status cm_vote_margins(const cm_profile* profile, double* margins) {
  return guarded([&] {
    const auto orders = need(profile, "profile").profile.orders();
    const auto delta = margin_matrix_from_orders(orders);
    need_out(margins, "margins");
    std::copy(delta.values().begin(), delta.values().end(), margins);
  });
}

cm_status cm_vote_borda(const cm_profile* profile, double* scores, size_t* order) {
  return guarded([&] {
    const auto s = borda_scores(need(profile, "profile").profile.orders());
    if (scores) std::copy(s.begin(), s.end(), scores);
    if (order) {
      const auto perm = order_from_scores(s);
      std::copy(perm.begin(), perm.end(), order);
    }
  });
}

cm_status cm_vote_kemeny_exact(const cm_profile* profile, size_t* order, double* objective) {
  return guarded([&] {
    const auto delta = margin_matrix_from_orders(need(profile, "profile").profile.orders());
    const auto best = exact_condorcet_order(delta);
    if (order) std::copy(best.permutation.begin(), best.permutation.end(), order);
    if (objective) *objective = best.objective;
  });
}

cm_status cm_vote_sco(const cm_profile* profile, const cm_soft_config* cfg, double* scores,
                      size_t* order, double* objective) {
  return guarded([&] {
    const auto delta = margin_matrix_from_orders(need(profile, "profile").profile.orders());
    const auto result = sco_scores(delta, soft_config(cfg));
    if (scores) std::copy(result.scores.begin(), result.scores.end(), scores);
    if (order) std::copy(result.order.begin(), result.order.end(), order);
    if (objective) *objective = kemeny_objective(delta, result.order);
  });
}

cm_status cm_train(const cm_image_list* train_set, const cm_image_list* val,
                   const char* const* voters, size_t n_voters, const cm_soft_config* cfg,
                   cm_progress_fn progress, void* user, cm_model** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    const auto& train_images = need(train_set, "train").images;
    static const std::vector<ColorImage> no_images;
    const auto& val_images = val ? val->images : no_images;
    auto names = n_voters ? string_list(voters, n_voters, "voter")
                          : std::vector<std::string>{"lex-rgb", "lex-gbr", "lex-brg"};
    const auto family = mapping_family(names);
    const SoftConfig soft = soft_config(cfg);
    ProgressCallback cb;
    if (progress) {
      cb = [&](const TrainProgress& p) { progress(p.epoch, p.train_loss, p.val_loss, user); };
    }
    auto result = train(train_images, val_images, family, soft, cb);
    slot = new cm_model{ModelFile{result.params, soft, std::move(names)}, std::move(result)};
  });
}

cm_status cm_model_save(const cm_model* model, const char* path) {
  return guarded([&] { save_model(&need(path, "path"), need(model, "model").file); });
}

cm_status cm_model_load(const char* path, cm_model** out) {
  return guarded([&] {
    auto& slot = need_out(out, "out");
    auto file = load_model(&need(path, "path"));
    TrainResult empty;
    empty.params = file.params;
    slot = new cm_model{std::move(file), std::move(empty)};
  });
}

cm_status cm_model_loss_csv(const cm_model* model, char** out) {
  return guarded([&] { need_out(out, "out") = dup_string(loss_curve_csv(need(model, "model").curve)); });
}

cm_status cm_model_score(const cm_model* model, const double* rgb, double* score) {
  return guarded([&] {
    const auto& m = need(model, "model");
    need(rgb, "rgb");
    need_out(score, "score") = mlp_forward(m.file.params, ColorValue(std::span(rgb, 3)));
  });
}

void cm_model_free(cm_model* model) { delete model; }

cm_status cm_irregularity(const cm_image* original, const cm_image* result, double* phi,
                          int* quantized) {
  return guarded([&] {
    const auto r = global_irregularity(need(original, "original").image, need(result, "result").image);
    need_out(phi, "phi") = r.phi;
    if (quantized) *quantized = r.quantized ? 1 : 0;
  });
}

cm_status cm_compare_csv(const char* irregularity_csv, double alpha, char** tests_csv,
                         char** hasse_dot, char** quantiles_csv) {
  return guarded([&] {
    const auto table = IrregularityTable::from_csv(&need(irregularity_csv, "irregularity_csv"));
    const auto cmp = compare_methods(table, alpha);
    // allocate everything before handing anything out
    std::vector<char*> owned;
    try {
      owned.push_back(tests_csv ? dup_string(cmp.tests_csv) : nullptr);
      owned.push_back(hasse_dot ? dup_string(cmp.hasse_dot) : nullptr);
      owned.push_back(quantiles_csv ? dup_string(cmp.quantiles_csv) : nullptr);
    } catch (...) {
      for (char* p : owned) std::free(p);
      throw;
    }
    if (tests_csv) *tests_csv = owned[0];
    if (hasse_dot) *hasse_dot = owned[1];
    if (quantiles_csv) *quantiles_csv = owned[2];
  });
}

cm_status cm_experiment_config(const char* config_path, const char* const* overrides,
                               size_t n_overrides, char** out_config) {
  return guarded([&] {
    auto& slot = need_out(out_config, "out_config");
    const auto cfg = experiment_config(config_path, overrides, n_overrides);
    cfg.validate();
    slot = dup_string(experiment_config_to_toml(cfg));
  });
}

cm_status cm_experiment_run(const char* config_path, const char* const* overrides,
                            size_t n_overrides, cm_progress_fn progress, cm_message_fn message,
                            void* user, char** out_dir) {
  return guarded([&] {
    const auto cfg = experiment_config(config_path, overrides, n_overrides);
    ExperimentHooks hooks;
    if (progress) {
      hooks.on_epoch = [&](const TrainProgress& p) { progress(p.epoch, p.train_loss, p.val_loss, user); };
    }
    if (message) hooks.on_message = [&](const std::string& m) { message(m.c_str(), user); };
    const auto summary = run_experiment(cfg, hooks);
    if (out_dir) *out_dir = dup_string(summary.output_dir);
  });
}

}  // extern "C"
