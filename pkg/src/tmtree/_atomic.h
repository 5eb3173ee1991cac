/* Single-word atomics on packed (s, v) cells. */
#ifndef TMTREE_ATOMIC_H
#define TMTREE_ATOMIC_H

#include <stdint.h>

static inline uint64_t tmt_load(uint64_t *p)
{
    return __atomic_load_n(p, __ATOMIC_ACQUIRE);
}

static inline void tmt_store(uint64_t *p, uint64_t w)
{
    __atomic_store_n(p, w, __ATOMIC_RELEASE);
}

static inline int tmt_cas(uint64_t *p, uint64_t expected, uint64_t desired)
{
    return __atomic_compare_exchange_n(p, &expected, desired, 0,
                                       __ATOMIC_ACQ_REL, __ATOMIC_ACQUIRE);
}

#endif
