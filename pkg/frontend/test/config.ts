/** Shared between the test server bootstrap and the suites. */
export const API_BASE = 'http://127.0.0.1:8917';
