/* condmorph C API.
 *
 * Every function returns a cm_status. On failure the calling thread's
 * cm_last_error() holds a message until its next API call. Strings handed
 * out through char** parameters are owned by the caller and released with
 * cm_string_free(). Handles are released with their *_free function; passing
 * NULL to a *_free function is a no-op.
 */
#ifndef CONDMORPH_H
#define CONDMORPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(CONDMORPH_BUILDING_LIBRARY)
#define CM_API __attribute__((visibility("default")))
#else
#define CM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
  CM_OK = 0,
  CM_ERR_INTERNAL = 1,
  CM_ERR_CONFIG = 2,
  CM_ERR_FORMAT = 3,
  CM_ERR_NUMERIC = 4,
  CM_ERR_DIMENSION = 5,
  CM_ERR_LOOKUP = 6,
  CM_ERR_INVALID_ORDER = 7,
  CM_ERR_SIZE = 8,
  CM_ERR_INVALID_ARGUMENT = 9, /* NULL handle or out-pointer */
  CM_ERR_DOMAIN = 10
} cm_status;

typedef struct cm_image cm_image;
typedef struct cm_image_list cm_image_list;
typedef struct cm_ordering cm_ordering;
typedef struct cm_profile cm_profile;
typedef struct cm_model cm_model;

CM_API const char* cm_version(void);
CM_API const char* cm_last_error(void);
CM_API const char* cm_status_name(cm_status status);
CM_API void cm_string_free(char* s);

/* ---- images (RGB, channels in [0,1]) ---- */

CM_API cm_status cm_image_from_rgb8(int width, int height, const uint8_t* rgb, cm_image** out);
/* PNG when the path ends in .png, binary PPM otherwise. 8-bit only. */
CM_API cm_status cm_image_read(const char* path, cm_image** out);
CM_API cm_status cm_image_write(const cm_image* image, const char* path);
CM_API cm_status cm_image_size(const cm_image* image, int* width, int* height);
/* Copies width*height*3 bytes into rgb; len is the buffer size. */
CM_API cm_status cm_image_to_rgb8(const cm_image* image, uint8_t* rgb, size_t len);
CM_API void cm_image_free(cm_image* image);

/* Records [first, first + count) of a CIFAR-10 binary batch file. */
CM_API cm_status cm_cifar_load(const char* path, size_t first, size_t count, cm_image_list** out);
CM_API cm_status cm_image_list_new(cm_image_list** out);
/* Appends a copy of image. */
CM_API cm_status cm_image_list_push(cm_image_list* list, const cm_image* image);
CM_API size_t cm_image_list_size(const cm_image_list* list);
/* A new handle holding a copy of element index. */
CM_API cm_status cm_image_list_get(const cm_image_list* list, size_t index, cm_image** out);
CM_API void cm_image_list_free(cm_image_list* list);

/* ---- orderings ---- */

/* lex-rgb, lex-gbr, lex-brg, custom:w0,w1,w2 or learned:MODEL_PATH. */
CM_API cm_status cm_ordering_new(const char* name, cm_ordering** out);
/* Borda rule over the named voters; scores are computed on the colors at hand. */
CM_API cm_status cm_ordering_new_borda(const char* const* voters, size_t n_voters,
                                       cm_ordering** out);
CM_API cm_status cm_ordering_from_model(const cm_model* model, cm_ordering** out);
CM_API cm_status cm_ordering_name(const cm_ordering* ordering, char** out);
CM_API void cm_ordering_free(cm_ordering* ordering);

/* Sorts n distinct colors (n*channels doubles, row per color) ascending into sorted. */
CM_API cm_status cm_rank_colors(const cm_ordering* ordering, const double* colors, size_t n,
                                size_t channels, double* sorted);
/* Rank LUT of the image's distinct colors as CSV (rank,r,g,b,score). */
CM_API cm_status cm_rank_lut_csv(const cm_ordering* ordering, const cm_image* image, char** out);

/* ---- morphology ---- */

/* op: erode|dilate|open|close; se: square:N|disk:R|cross:A. */
CM_API cm_status cm_morph(const cm_image* image, const cm_ordering* ordering, const char* op,
                          const char* se, cm_image** out);

/* ---- rank aggregation ---- */

typedef struct cm_soft_config {
  double tau;
  int epochs;
  size_t batch_size;
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  uint64_t seed;
} cm_soft_config;

CM_API void cm_soft_config_default(cm_soft_config* cfg);

/* One voter per line, comma-separated 0-based candidate indices, least first. */
CM_API cm_status cm_profile_parse(const char* text, cm_profile** out);
CM_API cm_status cm_profile_read(const char* path, cm_profile** out);
CM_API size_t cm_profile_candidates(const cm_profile* profile);
CM_API size_t cm_profile_voters(const cm_profile* profile);
CM_API void cm_profile_free(cm_profile* profile);

/* Arrays hold cm_profile_candidates() entries (margins: n*n, row-major).
 * order lists candidate indices least to greatest. */
CM_API cm_status cm_vote_margins(const cm_profile* profile, double* margins);
CM_API cm_status cm_vote_borda(const cm_profile* profile, double* scores, size_t* order);
CM_API cm_status cm_vote_kemeny_exact(const cm_profile* profile, size_t* order, double* objective);
/* Soft relaxation; objective is the Kemeny objective of the induced order. */
CM_API cm_status cm_vote_sco(const cm_profile* profile, const cm_soft_config* cfg, double* scores,
                             size_t* order, double* objective);

/* ---- learned mapping ---- */

typedef void (*cm_progress_fn)(int epoch, double train_loss, double val_loss, void* user);

/* val may be NULL. val_loss is NaN in the callback without validation data. */
CM_API cm_status cm_train(const cm_image_list* train, const cm_image_list* val,
                          const char* const* voters, size_t n_voters, const cm_soft_config* cfg,
                          cm_progress_fn progress, void* user, cm_model** out);
CM_API cm_status cm_model_save(const cm_model* model, const char* path);
CM_API cm_status cm_model_load(const char* path, cm_model** out);
/* epoch,train_loss,val_loss; header only for a loaded model. */
CM_API cm_status cm_model_loss_csv(const cm_model* model, char** out);
CM_API cm_status cm_model_score(const cm_model* model, const double* rgb, double* score);
CM_API void cm_model_free(cm_model* model);

/* ---- evaluation ---- */

/* Global irregularity of result against original. quantized may be NULL. */
CM_API cm_status cm_irregularity(const cm_image* original, const cm_image* result, double* phi,
                                 int* quantized);
/* Pairwise signed-rank tests over an image,method,phi table. Outputs may be NULL. */
CM_API cm_status cm_compare_csv(const char* irregularity_csv, double alpha, char** tests_csv,
                                char** hasse_dot, char** quantiles_csv);

/* ---- experiment ---- */

typedef void (*cm_message_fn)(const char* message, void* user);

/* config_path may be NULL (defaults). overrides are section.key=value strings.
 * out_config receives the effective configuration as TOML. */
CM_API cm_status cm_experiment_config(const char* config_path, const char* const* overrides,
                                      size_t n_overrides, char** out_config);
/* out_dir (may be NULL) receives the artifact directory. */
CM_API cm_status cm_experiment_run(const char* config_path, const char* const* overrides,
                                   size_t n_overrides, cm_progress_fn progress,
                                   cm_message_fn message, void* user, char** out_dir);

#ifdef __cplusplus
}
#endif

#endif /* CONDMORPH_H */
