// Command-line front end over the C API.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "condmorph/condmorph.h"

namespace {

int exit_code(cm_status s) {
  switch (s) {
    case CM_OK: return 0;
    case CM_ERR_CONFIG:
    case CM_ERR_SIZE:
    case CM_ERR_INVALID_ARGUMENT: return 2;
    case CM_ERR_FORMAT:
    case CM_ERR_DIMENSION:
    case CM_ERR_LOOKUP:
    case CM_ERR_INVALID_ORDER:
    case CM_ERR_DOMAIN: return 3;
    case CM_ERR_NUMERIC: return 4;
    case CM_ERR_INTERNAL: return 1;
  }
  return 1;
}

struct Failure {
  cm_status status;
};

void check(cm_status s) {
  if (s != CM_OK) throw Failure{s};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  operator T*() const { return p; }
};

using Image = Handle<cm_image, cm_image_free>;
using ImageList = Handle<cm_image_list, cm_image_list_free>;
using Ordering = Handle<cm_ordering, cm_ordering_free>;
using Profile = Handle<cm_profile, cm_profile_free>;
using Model = Handle<cm_model, cm_model_free>;
using String = Handle<char, cm_string_free>;

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void make_ordering(const std::string& name, const std::vector<std::string>& voters, Ordering& out) {
  if (name == "borda") {
    const auto names = c_strings(voters);
    check(cm_ordering_new_borda(names.data(), names.size(), out.out()));
  } else {
    check(cm_ordering_new(name.c_str(), out.out()));
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    throw Failure{CM_ERR_FORMAT};
  }
  out << text;
}

void print_progress(int epoch, double train_loss, double val_loss, void*) {
  if (std::isnan(val_loss)) {
    std::fprintf(stderr, "epoch %d  train %.6f\n", epoch, train_loss);
  } else {
    std::fprintf(stderr, "epoch %d  train %.6f  val %.6f\n", epoch, train_loss, val_loss);
  }
}

void print_message(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

// "#rrggbb" or "rrggbb" -> channels in [0,1]
bool parse_hex(const std::string& text, double* rgb) {
  std::string s = text[0] == '#' ? text.substr(1) : text;
  if (s.size() != 6 || s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    return false;
  }
  for (int c = 0; c < 3; ++c) rgb[c] = std::stoi(s.substr(2 * c, 2), nullptr, 16) / 255.0;
  return true;
}

std::string to_hex(const double* rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(rgb[0] * 255)),
                static_cast<int>(std::lround(rgb[1] * 255)), static_cast<int>(std::lround(rgb[2] * 255)));
  return buf;
}

const std::vector<std::string> kPalette = {
    "#000000", "#800000", "#008000", "#808000", "#000080", "#800080", "#008080", "#c0c0c0",
    "#808080", "#ff0000", "#00ff00", "#ffff00", "#0000ff", "#ff00ff", "#00ffff", "#ffffff"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color morphology with learned Condorcet orderings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cm_version()));

  const std::vector<std::string> default_voters{"lex-rgb", "lex-gbr", "lex-brg"};

  // train
  auto* train = app.add_subcommand("train", "Train the 3-64-1 score network on CIFAR images");
  std::string train_data, model_out, loss_out;
  std::size_t train_first = 0, train_count = 100, val_first = 100, val_count = 100;
  std::vector<std::string> train_voters = default_voters;
  cm_soft_config soft;
  cm_soft_config_default(&soft);
  train->add_option("--data", train_data, "CIFAR-10 binary batch file")->required();
  train->add_option("--train-first", train_first)->capture_default_str();
  train->add_option("--train-count", train_count)->capture_default_str();
  train->add_option("--val-first", val_first)->capture_default_str();
  train->add_option("--val-count", val_count, "0 disables validation")->capture_default_str();
  train->add_option("--voters", train_voters, "Voting mappings")->delimiter(',')->capture_default_str();
  train->add_option("--epochs", soft.epochs)->capture_default_str();
  train->add_option("--batch-size", soft.batch_size)->capture_default_str();
  train->add_option("--tau", soft.tau)->capture_default_str();
  train->add_option("--lr", soft.learning_rate)->capture_default_str();
  train->add_option("--seed", soft.seed)->capture_default_str();
  train->add_option("--model", model_out, "Output model JSON")->required();
  train->add_option("--loss", loss_out, "Output loss CSV (default: stdout)");
  bool quiet = false;
  train->add_flag("--quiet", quiet, "No per-epoch progress");

  // morph
  auto* morph = app.add_subcommand("morph", "Apply a flat morphological operator");
  std::string morph_op = "open", morph_se = "square:3", morph_order = "lex-rgb", morph_in, morph_out;
  std::vector<std::string> morph_voters = default_voters;
  morph->add_option("--op", morph_op, "erode|dilate|open|close")->capture_default_str();
  morph->add_option("--se", morph_se, "square:N|disk:R|cross:A")->capture_default_str();
  morph->add_option("--order", morph_order, "lex-rgb|lex-gbr|lex-brg|borda|custom:W|learned:PATH")
      ->capture_default_str();
  morph->add_option("--voters", morph_voters, "Voters for borda")->delimiter(',');
  morph->add_option("--in", morph_in, "Input image (.ppm or .png)")->required();
  morph->add_option("--out", morph_out, "Output image (.ppm or .png)")->required();

  // vote
  auto* vote = app.add_subcommand("vote", "Aggregate a voter profile");
  std::string vote_method, vote_profile;
  vote->add_option("method", vote_method, "borda|kemeny-exact|margins|sco")
      ->required()
      ->check(CLI::IsMember({"borda", "kemeny-exact", "margins", "sco"}));
  vote->add_option("--profile", vote_profile, "Profile file, one voter per line")->required();
  cm_soft_config vote_soft;
  cm_soft_config_default(&vote_soft);
  vote_soft.tau = 0.1;
  vote_soft.learning_rate = 0.05;
  vote_soft.epochs = 2000;
  vote->add_option("--epochs", vote_soft.epochs, "sco only")->capture_default_str();
  vote->add_option("--lr", vote_soft.learning_rate, "sco only")->capture_default_str();
  vote->add_option("--tau", vote_soft.tau, "sco only")->capture_default_str();

  // rank
  auto* rank = app.add_subcommand("rank", "Sort colors, or print an image's rank LUT");
  std::string rank_order = "lex-rgb", rank_image, rank_strip;
  std::vector<std::string> rank_colors, rank_voters = default_voters;
  rank->add_option("--order", rank_order)->capture_default_str();
  rank->add_option("--voters", rank_voters, "Voters for borda")->delimiter(',');
  auto* colors_opt = rank->add_option("--colors", rank_colors, "Hex colors, or 'palette'")->delimiter(',');
  auto* image_opt = rank->add_option("--image", rank_image, "Print the LUT of this image as CSV");
  colors_opt->excludes(image_opt);
  rank->add_option("--strip", rank_strip, "Also write the sorted colors as a 1xk image");

  // irregularity
  auto* irr = app.add_subcommand("irregularity", "Global irregularity of a processed image");
  std::string irr_original, irr_result;
  irr->add_option("--original", irr_original)->required();
  irr->add_option("--result", irr_result)->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Pairwise signed-rank tests over an irregularity table");
  std::string cmp_table, cmp_tests, cmp_hasse, cmp_quantiles;
  double cmp_alpha = 0.01;
  compare->add_option("--table", cmp_table, "CSV image,method,phi")->required();
  compare->add_option("--alpha", cmp_alpha)->capture_default_str();
  compare->add_option("--tests", cmp_tests, "Output test CSV (default: stdout)");
  compare->add_option("--hasse", cmp_hasse, "Output DOT file");
  compare->add_option("--quantiles", cmp_quantiles, "Output quantile CSV");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run the full training and evaluation protocol");
  std::string exp_config;
  std::vector<std::string> exp_overrides;
  bool exp_dump = false;
  experiment->add_option("--config", exp_config, "TOML config file");
  experiment->add_option("--set", exp_overrides, "section.key=value override (repeatable)");
  experiment->add_flag("--print-config", exp_dump, "Print the effective config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*train) {
      ImageList train_set, val_set;
      check(cm_cifar_load(train_data.c_str(), train_first, train_count, train_set.out()));
      if (val_count > 0) check(cm_cifar_load(train_data.c_str(), val_first, val_count, val_set.out()));
      const auto voters = c_strings(train_voters);
      Model model;
      check(cm_train(train_set, val_set, voters.data(), voters.size(), &soft,
                     quiet ? nullptr : print_progress, nullptr, model.out()));
      check(cm_model_save(model, model_out.c_str()));
      String csv;
      check(cm_model_loss_csv(model, csv.out()));
      write_text(loss_out, csv.p);
    } else if (*morph) {
      Image in, out;
      Ordering ordering;
      check(cm_image_read(morph_in.c_str(), in.out()));
      make_ordering(morph_order, morph_voters, ordering);
      check(cm_morph(in, ordering, morph_op.c_str(), morph_se.c_str(), out.out()));
      check(cm_image_write(out, morph_out.c_str()));
    } else if (*vote) {
      Profile profile;
      check(cm_profile_read(vote_profile.c_str(), profile.out()));
      const std::size_t n = cm_profile_candidates(profile);
      std::vector<std::size_t> order(n);
      std::vector<double> scores(n);
      auto print_order = [&] {
        std::cout << "order:";
        for (std::size_t i = 0; i < n; ++i) std::cout << (i ? "," : " ") << order[i];
        std::cout << "\n";
      };
      if (vote_method == "margins") {
        std::vector<double> m(n * n);
        check(cm_vote_margins(profile, m.data()));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) std::cout << (j ? "," : "") << m[i * n + j];
          std::cout << "\n";
        }
      } else if (vote_method == "borda") {
        check(cm_vote_borda(profile, scores.data(), order.data()));
        std::cout << "scores:";
        for (std::size_t i = 0; i < n; ++i) std::cout << (i ? "," : " ") << scores[i];
        std::cout << "\n";
        print_order();
      } else if (vote_method == "kemeny-exact") {
        double objective = 0.0;
        check(cm_vote_kemeny_exact(profile, order.data(), &objective));
        print_order();
        std::cout << "objective: " << objective << "\n";
      } else {
        double objective = 0.0;
        check(cm_vote_sco(profile, &vote_soft, scores.data(), order.data(), &objective));
        std::cout << "scores:";
        for (std::size_t i = 0; i < n; ++i) std::cout << (i ? "," : " ") << scores[i];
        std::cout << "\n";
        print_order();
        std::cout << "objective: " << objective << "\n";
      }
    } else if (*rank) {
      Ordering ordering;
      make_ordering(rank_order, rank_voters, ordering);
      if (!rank_image.empty()) {
        Image image;
        check(cm_image_read(rank_image.c_str(), image.out()));
        String csv;
        check(cm_rank_lut_csv(ordering, image, csv.out()));
        std::cout << csv.p;
      } else {
        if (rank_colors.empty() || (rank_colors.size() == 1 && rank_colors[0] == "palette")) {
          rank_colors = kPalette;
        }
        std::vector<double> in(rank_colors.size() * 3), out(in.size());
        for (std::size_t i = 0; i < rank_colors.size(); ++i) {
          if (!parse_hex(rank_colors[i], &in[i * 3])) {
            std::cerr << "error: bad color '" << rank_colors[i] << "' (expected #rrggbb)\n";
            return 2;
          }
        }
        check(cm_rank_colors(ordering, in.data(), rank_colors.size(), 3, out.data()));
        for (std::size_t i = 0; i < rank_colors.size(); ++i) std::cout << to_hex(&out[i * 3]) << "\n";
        if (!rank_strip.empty()) {
          std::vector<std::uint8_t> rgb(out.size());
          for (std::size_t i = 0; i < out.size(); ++i) {
            rgb[i] = static_cast<std::uint8_t>(std::lround(out[i] * 255));
          }
          Image strip;
          check(cm_image_from_rgb8(static_cast<int>(rank_colors.size()), 1, rgb.data(), strip.out()));
          check(cm_image_write(strip, rank_strip.c_str()));
        }
      }
    } else if (*irr) {
      Image a, b;
      check(cm_image_read(irr_original.c_str(), a.out()));
      check(cm_image_read(irr_result.c_str(), b.out()));
      double phi = 0.0;
      int quantized = 0;
      check(cm_irregularity(a, b, &phi, &quantized));
      std::printf("%.17g%s\n", phi, quantized ? " (quantized)" : "");
    } else if (*compare) {
      std::ifstream in(cmp_table);
      if (!in) {
        std::cerr << "error: cannot open '" << cmp_table << "'\n";
        return 3;
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      String tests, hasse, quantiles;
      check(cm_compare_csv(buf.str().c_str(), cmp_alpha, tests.out(), hasse.out(), quantiles.out()));
      write_text(cmp_tests, tests.p);
      if (!cmp_hasse.empty()) write_text(cmp_hasse, hasse.p);
      if (!cmp_quantiles.empty()) write_text(cmp_quantiles, quantiles.p);
    } else if (*experiment) {
      const auto overrides = c_strings(exp_overrides);
      const char* cfg_path = exp_config.empty() ? nullptr : exp_config.c_str();
      if (exp_dump) {
        String toml;
        check(cm_experiment_config(cfg_path, overrides.data(), overrides.size(), toml.out()));
        std::cout << toml.p;
      } else {
        String dir;
        check(cm_experiment_run(cfg_path, overrides.data(), overrides.size(), print_progress,
                                print_message, nullptr, dir.out()));
        std::cout << dir.p << "\n";
      }
    }
  } catch (const Failure& f) {
    const char* msg = cm_last_error();
    std::cerr << "error: " << (msg && *msg ? msg : cm_status_name(f.status)) << "\n";
    return exit_code(f.status);
  }
  return 0;
}
