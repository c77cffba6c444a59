/* LD_PRELOAD shim for offline checks: opening any socket ends the process
   with status 86. */
#include <stdio.h>
#include <unistd.h>

int socket(int domain, int type, int protocol) {
  (void)type;
  (void)protocol;
  fprintf(stderr, "no_network: socket(domain=%d) attempted in an offline run\n", domain);
  _exit(86);
}
