/* inline helper in a header, never ingested */
static inline int util_twice(int x)
{
	return 2 * x;
}
