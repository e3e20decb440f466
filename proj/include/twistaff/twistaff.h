#ifndef TWISTAFF_H
#define TWISTAFF_H

#include <stddef.h>

#if defined(_WIN32)
#define TWISTAFF_API __declspec(dllexport)
#else
#define TWISTAFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TWISTAFF_OK = 0,
    TWISTAFF_E_USAGE,
    TWISTAFF_E_CONFIG,
    TWISTAFF_E_DIVISION_BY_ZERO,
    TWISTAFF_E_CONDUCTOR_CAP,
    TWISTAFF_E_UNSUPPORTED_ALPHA,
    TWISTAFF_E_LIE_INVALID,
    TWISTAFF_E_NOT_AUTOMORPHISM,
    TWISTAFF_E_DOMAIN,
    TWISTAFF_E_CUTOFF,
    TWISTAFF_E_VERIFICATION,
    TWISTAFF_E_INTERNAL
} twistaff_status;

typedef enum { TWISTAFF_TSV = 0, TWISTAFF_JSON = 1 } twistaff_format;

typedef struct twistaff_config twistaff_config;
typedef struct twistaff_context twistaff_context;
typedef struct twistaff_module twistaff_module;
typedef struct twistaff_quotient twistaff_quotient;
typedef struct twistaff_report twistaff_report;

TWISTAFF_API const char* twistaff_version(void);
TWISTAFF_API const char* twistaff_status_name(twistaff_status s);
/* message of the last failed call on this thread; "" after a success */
TWISTAFF_API const char* twistaff_last_error(void);
/* strings returned through char** out parameters */
TWISTAFF_API void twistaff_string_free(char* s);

TWISTAFF_API twistaff_status twistaff_set_conductor_cap(long cap);

/* config */
TWISTAFF_API twistaff_status twistaff_config_load(const char* path, twistaff_config** out);
TWISTAFF_API twistaff_status twistaff_config_parse(const char* text, twistaff_config** out);
TWISTAFF_API void twistaff_config_free(twistaff_config* c);
/* keys: cutoff, window, seed, timing ("0"/"1") */
TWISTAFF_API twistaff_status twistaff_config_set(twistaff_config* c, const char* key, const char* value);

/* algebra + automorphism */
TWISTAFF_API twistaff_status twistaff_context_new(const twistaff_config* c, twistaff_context** out);
TWISTAFF_API void twistaff_context_free(twistaff_context* x);
TWISTAFF_API size_t twistaff_context_dim(const twistaff_context* x);
TWISTAFF_API twistaff_status twistaff_decompose(const twistaff_context* x, twistaff_format f, char** out);
/* generator literals such as "e@1/2", "(e+f)@-1", "K" */
TWISTAFF_API twistaff_status twistaff_bracket(const twistaff_context* x, const char* a, const char* b, char** out);

/* modules */
TWISTAFF_API twistaff_status twistaff_module_new(const twistaff_context* x, const twistaff_config* c,
                                                 twistaff_module** out);
TWISTAFF_API void twistaff_module_free(twistaff_module* m);
TWISTAFF_API twistaff_status twistaff_module_summary(const twistaff_module* m, twistaff_format f, char** out);
/* max_weight NULL means the cutoff */
TWISTAFF_API twistaff_status twistaff_character(const twistaff_module* m, const char* max_weight, twistaff_format f,
                                                char** out);
TWISTAFF_API twistaff_status twistaff_dimension(const twistaff_module* m, const char* weight, size_t* out);
TWISTAFF_API twistaff_status twistaff_twist_weights(const twistaff_module* m, twistaff_format f, char** out);
/* word of space-separated literals applied right to left to w^b; "L" is the formal L(-1) */
TWISTAFF_API twistaff_status twistaff_normal_form(const twistaff_module* m, const char* word, size_t b, char** out);
TWISTAFF_API twistaff_status twistaff_sugawara(const twistaff_module* m, long n, const char* word, size_t b,
                                               char** out);

/* quotients by a null field power */
TWISTAFF_API twistaff_status twistaff_quotient_new(const twistaff_module* m, const twistaff_config* c,
                                                   twistaff_quotient** out);
TWISTAFF_API void twistaff_quotient_free(twistaff_quotient* q);
TWISTAFF_API twistaff_status twistaff_quotient_dims(const twistaff_quotient* q, const char* max_weight,
                                                    twistaff_format f, char** out);
TWISTAFF_API twistaff_status twistaff_quotient_annihilated(const twistaff_quotient* q, int* out);

/* verification reports; suites is a comma list or "all" */
TWISTAFF_API twistaff_status twistaff_run_suites(const twistaff_config* c, const char* suites,
                                                 twistaff_report** out);
TWISTAFF_API void twistaff_report_free(twistaff_report* r);
TWISTAFF_API size_t twistaff_report_size(const twistaff_report* r);
TWISTAFF_API size_t twistaff_report_failures(const twistaff_report* r);
TWISTAFF_API twistaff_status twistaff_report_render(const twistaff_report* r, twistaff_format f, char** out);

#ifdef __cplusplus
}
#endif

#endif
