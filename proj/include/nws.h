#ifndef NWS_H
#define NWS_H

/* C interface to the waveform synthesis workbench. Every call that can fail
 * returns an nws_status; the most recent failure message for the calling
 * thread is available through nws_last_error. Out-parameters are written only
 * on NWS_OK. Strings returned through char** are heap copies owned by the
 * caller; release them with nws_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nws_status {
    NWS_OK = 0,
    NWS_E_INVALID = 1,  /* bad argument or configuration */
    NWS_E_IO = 2,       /* file could not be read or written */
    NWS_E_FORMAT = 3,   /* file exists but its contents are malformed */
    NWS_E_MISMATCH = 4, /* inputs disagree (rates, shapes, profiles, arches) */
    NWS_E_RUNTIME = 5   /* computation failed (non-finite values, ...) */
} nws_status;

/* Copies the calling thread's last error message into buf (NUL terminated,
 * truncated to cap). Returns the full message length. */
size_t nws_last_error(char* buf, size_t cap);

void nws_string_free(char* s);

/* ---- waveforms ---------------------------------------------------------- */

typedef struct nws_waveform nws_waveform;
typedef struct nws_wavelist nws_wavelist;

nws_status nws_waveform_create(const float* samples, size_t n, int sample_rate,
                               nws_waveform** out);
nws_status nws_waveform_read_wav(const char* path, nws_waveform** out);
nws_status nws_waveform_write_wav(const nws_waveform* w, const char* path, int bit_depth);
size_t nws_waveform_size(const nws_waveform* w);
int nws_waveform_sample_rate(const nws_waveform* w);
/* dst must hold nws_waveform_size(w) floats. */
nws_status nws_waveform_copy_samples(const nws_waveform* w, float* dst, size_t cap);
nws_status nws_waveform_resample(const nws_waveform* w, int target_rate, nws_waveform** out);
void nws_waveform_free(nws_waveform* w);

/* Splits into consecutive pieces of at most max_seconds. */
nws_status nws_waveform_segment(const nws_waveform* w, double max_seconds, nws_wavelist** out);
size_t nws_wavelist_size(const nws_wavelist* l);
/* Borrowed reference, valid while the list lives. */
const nws_waveform* nws_wavelist_get(const nws_wavelist* l, size_t i);
void nws_wavelist_free(nws_wavelist* l);

/* ---- pitch labels ------------------------------------------------------- */

typedef struct nws_f0 nws_f0;

nws_status nws_f0_read(const char* path, nws_f0** out);
size_t nws_f0_size(const nws_f0* f);
/* One Hz value per 10 ms frame, 0 where unvoiced. Borrowed. */
const float* nws_f0_values(const nws_f0* f);
void nws_f0_free(nws_f0* f);

/* ---- features ----------------------------------------------------------- */

typedef struct nws_mel nws_mel;

nws_status nws_mel_load(const char* path, nws_mel** out);
int nws_mel_frames(const nws_mel* m);
int nws_mel_dims(const nws_mel* m);
/* Borrowed profile name ("TS" or "FT"). */
const char* nws_mel_profile(const nws_mel* m);
void nws_mel_free(nws_mel* m);

/* Extracts features for every manifest row into out_dir/<stem>.mel. */
nws_status nws_extract_features(const char* manifest_path, const char* profile,
                                const char* out_dir, int threads);
/* Single file; f0_path may be NULL to skip the duration check. */
nws_status nws_features_from_wav(const char* wav_path, const char* f0_path,
                                 const char* profile, const char* out_path);

/* ---- corpus ------------------------------------------------------------- */

nws_status nws_make_synth_corpus(const char* out_dir, int tracks_per_instrument,
                                 double seconds, int sample_rate, uint64_t seed);
/* CSV table of per-instrument, per-split counts, minutes, and pitch range. */
nws_status nws_corpus_stats(const char* manifest_path, char** csv_out);

/* ---- training and synthesis --------------------------------------------- */

typedef struct nws_train_params {
    const char* manifest_path;
    const char* arch;     /* "nsf" | "wavenet" */
    const char* scenario; /* "scratch" | "zero_shot" | "fine_tune" */
    const char* profile;  /* "TS" | "FT" */
    int max_steps;
    double lr;
    double crop_seconds;
    uint64_t seed;
    const char* init_checkpoint; /* required by zero_shot and fine_tune */
    const char* out_checkpoint;
    const char* loss_log_path;   /* NULL to skip the step,loss CSV */
} nws_train_params;

/* Fills defaults: scratch nsf on TS, 0 steps, lr 1e-4, crop 1 s, seed 1. */
void nws_train_params_init(nws_train_params* p);
nws_status nws_train(const nws_train_params* p);

/* Renders features + labels through a checkpoint into a 16-bit WAV.
 * mode is "sample" or "argmax" (quantized arch only; ignored otherwise). */
nws_status nws_synth(const char* checkpoint_path, const char* features_path,
                     const char* f0_path, const char* out_wav_path, const char* mode,
                     uint64_t seed);

/* ---- evaluation --------------------------------------------------------- */

/* Scores <synth_dir>/<audio basename> for every track of the split against
 * the corpus labels and writes the report CSV. Tracks without a rendition
 * are skipped and counted into *n_missing (may be NULL). */
nws_status nws_evaluate(const char* manifest_path, const char* split, const char* synth_dir,
                        const char* system_name, double voicing_threshold, int threads,
                        const char* out_csv_path, int* n_missing);

/* Time-frequency reassignment image of a WAV; csv_path and png_path may each
 * be NULL, but not both. */
nws_status nws_rainbowgram(const char* wav_path, const char* profile, const char* csv_path,
                           const char* png_path);

/* Finite-difference check of the named architecture's gradients at its tiny
 * configuration. *pass is 1 when every block is within tolerance; *report
 * gets the per-block table. */
nws_status nws_gradcheck(const char* arch, double tolerance, uint64_t seed, char** report,
                         int* pass);

#ifdef __cplusplus
}
#endif

#endif /* NWS_H */
