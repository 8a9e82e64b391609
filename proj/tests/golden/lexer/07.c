void shift(int *p)
{
	*p <<= 2;
	*p >>= 1;
	p->next->prev = p;
	a = b ? c : d;
	i += j -= k *= 2;
	x = !y && ~z || w != 0;
}
