#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <malloc.h>

int main(int argc, char** argv) {
  // Training allocates and frees large per-epoch buffers; keep them in the
  // arena instead of returning pages to the kernel after every epoch.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
  return doctest::Context(argc, argv).run();
}
