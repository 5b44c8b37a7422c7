/** Payload shapes of the read-only analytics API. */
export {};
