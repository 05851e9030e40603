import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // live_roundtrip boots a real server; give it headroom.
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
