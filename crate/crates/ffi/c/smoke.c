/* Exercises the C API: 2x2 static scene, curvature map I/O and metrics. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "arcvfi.h"

#define CHECK(call)                                                              \
    do {                                                                         \
        ArcvfiStatus s_ = (call);                                                \
        if (s_ != ARCVFI_STATUS_OK) {                                            \
            fprintf(stderr, "%s failed (%d): %s\n", #call, (int)s_,              \
                    arcvfi_last_error_message());                                \
            return 1;                                                            \
        }                                                                        \
    } while (0)

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: smoke <scratch-dir>\n");
        return 2;
    }
    char path[4096];
    snprintf(path, sizeof path, "%s/sigma.pfm", argv[1]);

    float pixels[12] = {0.1f, 0.2f, 0.3f, 0.4f, 0.5f, 0.6f,
                        0.7f, 0.8f, 0.9f, 1.0f, 0.0f, 0.5f};
    float zeros[8] = {0};
    float sig[4] = {0.0f, 0.0f, 0.0f, 1.0000001f};

    ArcvfiImage *img = NULL, *out = NULL;
    ArcvfiFlow *flow = NULL;
    ArcvfiSigma *sigma = NULL, *loaded = NULL;
    size_t clamped = 0;

    CHECK(arcvfi_image_new(2, 2, 3, pixels, &img));
    CHECK(arcvfi_flow_new(2, 2, zeros, &flow));
    CHECK(arcvfi_sigma_new(2, 2, sig, true, &sigma, &clamped));
    if (clamped != 1) {
        fprintf(stderr, "expected one clamped value, got %zu\n", clamped);
        return 1;
    }
    CHECK(arcvfi_write_sigma(path, sigma));
    CHECK(arcvfi_read_sigma(path, &loaded, &clamped));

    CHECK(arcvfi_interpolate(img, img, flow, flow, loaded, loaded, 0.5,
                             arcvfi_default_sigma_threshold(), false, &out));
    float back[12];
    CHECK(arcvfi_image_copy_data(out, back, 12));
    if (memcmp(back, pixels, sizeof back) != 0) {
        fprintf(stderr, "static scene changed\n");
        return 1;
    }

    double psnr = 0.0, charb = 0.0, dx = 0.0, dy = 0.0;
    CHECK(arcvfi_psnr(img, out, &psnr));
    CHECK(arcvfi_charbonnier(img, out, 0.001, &charb));
    if (!isinf(psnr) || charb != 0.001) {
        fprintf(stderr, "unexpected metrics psnr=%f charbonnier=%f\n", psnr, charb);
        return 1;
    }

    /* (1, 0) rotated a quarter turn about the origin, halfway there */
    CHECK(arcvfi_pixel_displacement(-1.0, 1.0, -sqrt(0.5), 0.5, 0.01, &dx, &dy));
    if (fabs(dx - (sqrt(0.5) - 1.0)) > 1e-12 || fabs(dy - sqrt(0.5)) > 1e-12) {
        fprintf(stderr, "bad displacement %f %f\n", dx, dy);
        return 1;
    }

    ArcvfiStatus s = arcvfi_read_flo("/nonexistent/flow.flo", &flow);
    if (s != ARCVFI_STATUS_IO || strstr(arcvfi_last_error_message(), "flow.flo") == NULL) {
        fprintf(stderr, "missing file not reported: %d\n", (int)s);
        return 1;
    }

    arcvfi_image_free(img);
    arcvfi_image_free(out);
    arcvfi_flow_free(flow);
    arcvfi_sigma_free(sigma);
    arcvfi_sigma_free(loaded);
    puts("ok");
    return 0;
}
