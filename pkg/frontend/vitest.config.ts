export default {
  test: {
    include: ["tests/**/*.test.ts"],
    // e2e suites wait on a live service and real runs
    testTimeout: 30000,
    hookTimeout: 60000,
  },
};
