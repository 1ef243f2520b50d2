// Copyright 2026 The catmap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * C interface to the catmap library. Every call returns a cm_status; on
 * failure cm_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * cm_string_free.
 */
#ifndef CATMAP_CATMAP_H
#define CATMAP_CATMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(CATMAP_BUILDING_LIBRARY)
#define CM_API __attribute__((visibility("default")))
#else
#define CM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
    CM_OK = 0,
    CM_ERR_ARGUMENT = 1,     /* null pointer or malformed argument */
    CM_ERR_PRECONDITION = 2, /* input violates a documented precondition */
    CM_ERR_INTERNAL = 3,     /* an internal invariant failed */
    CM_ERR_UNSUPPORTED = 4   /* well-formed input outside the supported range */
} cm_status;

CM_API const char *cm_version(void);
CM_API const char *cm_last_error(void);
CM_API void cm_string_free(char *s);
/* 0 restores the default (CATMAP_THREADS or hardware concurrency). */
CM_API cm_status cm_set_threads(unsigned threads);

/* ---- symplectic matrices ---- */

typedef struct cm_matrix cm_matrix;

/* Rows separated by ';', entries by ',', e.g. "2,1;1,1". */
CM_API cm_status cm_matrix_parse(const char *text, cm_matrix **out);
CM_API cm_status cm_matrix_from_entries(size_t side, const long long *entries,
                                        cm_matrix **out);
CM_API void cm_matrix_free(cm_matrix *m);
CM_API size_t cm_matrix_side(const cm_matrix *m);

/* JSON summary: symplecticity, trace, hyperbolicity, characteristic
 * polynomial, phi_A; with N > 0 also admissibility and the quantum period. */
CM_API cm_status cm_matrix_report(const cm_matrix *m, uint64_t N, char **json);
CM_API cm_status cm_quantum_period(const cm_matrix *m, uint64_t N, uint64_t *period);
/* JSON {k, N, even, admissible, P} for the sequence N_k of an SL(2) matrix. */
CM_API cm_status cm_periods(const cm_matrix *m, unsigned k, char **json);
CM_API cm_status cm_period_phase(const cm_matrix *m, uint64_t N, uint64_t *period,
                                 double *phase, double *defect);
CM_API cm_status cm_egorov_defect(const cm_matrix *m, uint64_t N, int window,
                                  double *defect);

/* ---- scarred eigenfunctions ---- */

typedef struct cm_scar cm_scar;

typedef struct cm_scar_summary {
    uint64_t N;
    uint64_t P;
    unsigned k;
    double phase;
    double phase_defect;
    double lambda;
    double norm2;
    double s1;
} cm_scar_summary;

CM_API cm_status cm_scar_build(const cm_matrix *b, unsigned k, cm_scar **out);
CM_API void cm_scar_free(cm_scar *s);
CM_API cm_status cm_scar_get_summary(const cm_scar *s, cm_scar_summary *out);
/* Relative eigen-residual of u; tight != 0 uses (M_B x M_B) M_R. */
CM_API cm_status cm_scar_eigen_residual(const cm_scar *s, int tight, double *residual);
CM_API cm_status cm_scar_matrix_element(const cm_scar *s, const long long j[2],
                                        const long long k[2], double *re, double *im);
CM_API cm_status cm_scar_scan(const cm_scar *s, int window, char **json);
/* Writes N doubles; centered != 0 moves the origin to the grid center. */
CM_API cm_status cm_scar_density_row(const cm_scar *s, uint64_t row, int centered,
                                     double *out);
CM_API cm_status cm_scar_band_mass(const cm_scar *s, double *mass_fraction,
                                   double *area_fraction);

/* ---- Gaussian overlaps ---- */

CM_API cm_status cm_overlap_closed_form(const cm_matrix *a, double y, double eta,
                                        double h, double *re, double *im);
CM_API cm_status cm_overlap_quadrature(const cm_matrix *a, double y, double eta,
                                       double h, double *re, double *im);
/* JSON comparison of the two overlap evaluations over seeded samples. */
CM_API cm_status cm_overlap_test(const cm_matrix *a, unsigned samples, uint64_t seed,
                                 char **json);
CM_API cm_status cm_lattice_sum(const cm_matrix *a, long long q, double c1, double c2,
                                double h, char **json);
CM_API cm_status cm_gaussian_autocorrelation(double lambda, long long t, double *out);
CM_API cm_status cm_s1(double lambda, double *out);

/* ---- Galois certification ---- */

CM_API cm_status cm_galois_census(uint32_t ell, unsigned n, char **json);
CM_API cm_status cm_sl2_census(uint32_t ell, char **json);
/* Coefficients highest degree first, e.g. "1,-3,1". */
CM_API cm_status cm_galois_certify_poly(const char *coeffs, uint32_t prime_bound,
                                        char **json);
CM_API cm_status cm_galois_certify_matrix(const cm_matrix *a, uint32_t prime_bound,
                                          char **json);
CM_API cm_status cm_galois_power_scan(const cm_matrix *a, unsigned m_max,
                                      uint32_t prime_bound, char **json);
CM_API cm_status cm_galois_sample(unsigned n, unsigned word_length, unsigned count,
                                  uint64_t seed, uint32_t prime_bound, char **json);

/* ---- uncertainty principles ---- */

/* Porosity of a Cantor iterate (dims 1 or 2), optionally dilated first. */
CM_API cm_status cm_fup_porosity_cantor(unsigned depth, unsigned dims, double nu,
                                        double alpha0, double alpha1, int lines,
                                        double dilation, char **json);
CM_API cm_status cm_fup_norm_cantor(unsigned depth, double *out);
/* kind 0: Cantor FUP decay; kind 1: basic uncertainty. lo/hi 0 = defaults. */
CM_API cm_status cm_scaling(int kind, unsigned d, double delta, unsigned lo,
                            unsigned hi, char **json);

#ifdef __cplusplus
}
#endif

#endif /* CATMAP_CATMAP_H */
