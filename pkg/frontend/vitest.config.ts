import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // let the acceptance tests' PASS lines reach the terminal
    disableConsoleIntercept: true,
  },
});
