import { defineConfig } from "vitest/config";

export default defineConfig({
  // Dev-server proxy so the console and the study service share an origin;
  // production builds are served by anything static, pointed at the service
  // with the base-URL field in the header.
  server: {
    proxy: {
      "/v1": "http://127.0.0.1:8600",
    },
  },
  test: {
    environment: "happy-dom",
  },
});
