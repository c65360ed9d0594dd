#ifndef GRAPHSIM_H
#define GRAPHSIM_H

#include <stddef.h>
#include <stdint.h>
#include <sys/types.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct GraphsimRegister GraphsimRegister;

const char *graphsim_version(void);
/* Message of the last failed call on this thread, or NULL. */
const char *graphsim_last_error(void);

/* NULL on failure (n == 0). */
GraphsimRegister *graphsim_register_new(size_t n, uint64_t seed);
void graphsim_register_free(GraphsimRegister *reg);
ssize_t graphsim_num_qubits(GraphsimRegister *reg);

/* Gates return 0 on success, -1 on failure. */
int graphsim_hadamard(GraphsimRegister *reg, size_t q);
int graphsim_s(GraphsimRegister *reg, size_t q);
int graphsim_sdg(GraphsimRegister *reg, size_t q);
int graphsim_x(GraphsimRegister *reg, size_t q);
int graphsim_y(GraphsimRegister *reg, size_t q);
int graphsim_z(GraphsimRegister *reg, size_t q);
int graphsim_cphase(GraphsimRegister *reg, size_t a, size_t b);
int graphsim_cnot(GraphsimRegister *reg, size_t control, size_t target);

/* Outcome bit, or -1. forced < 0 draws a random outcome. deterministic may be NULL. */
int graphsim_measure(GraphsimRegister *reg, size_t q, int forced, int *deterministic);

/* Owned strings; release with graphsim_string_free. */
char *graphsim_stabilizer_text(GraphsimRegister *reg);
char *graphsim_adjacency_text(GraphsimRegister *reg);
void graphsim_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif
